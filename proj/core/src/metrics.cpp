/* Copyright 2026 The Firecast Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "firecast/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

namespace {

void check(std::span<const double> y, std::span<const double> yhat, const char* name) {
  if (y.size() != yhat.size()) {
    throw ShapeError(fmt::format("{}: {} targets vs {} predictions", name, y.size(), yhat.size()));
  }
  if (y.empty()) throw ShapeError(fmt::format("{}: empty input", name));
}

}  // namespace

double mae(std::span<const double> y, std::span<const double> yhat) {
  check(y, yhat, "mae");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - yhat[i]);
  return s / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> yhat) {
  check(y, yhat, "rmse");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - yhat[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(y.size()));
}

}  // namespace firecast
