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

#include "firecast/forecast.hpp"

#include <cmath>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

ForecastResult forecast_with(const WindowPredictor& predictor, const NormalizationParams& norm,
                             const MonthlySeries& series, std::size_t window, std::size_t horizon, bool clamp) {
  if (horizon == 0) throw ArgumentError("forecast horizon must be >= 1");
  if (window == 0 || series.size() < window) {
    throw DataError(fmt::format("series of {} months is shorter than window {}", series.size(), window));
  }

  // Rolling buffer: the last `window` observed values, then each prediction.
  std::vector<double> buf = norm.apply(std::span<const double>(series.values).last(window));
  buf.reserve(window + horizon);
  for (std::size_t k = 0; k < horizon; ++k) {
    const double next = predictor(std::span<const double>(buf).subspan(k, window));
    if (!std::isfinite(next)) throw NumericError(fmt::format("non-finite prediction at forecast step {}", k + 1));
    buf.push_back(next);
  }

  ForecastResult out;
  out.start_month = series.end_month().plus_months(1);
  out.horizon = horizon;
  out.clamped = clamp;
  out.values = norm.invert(std::span<const double>(buf).subspan(window));
  if (clamp) {
    for (double& v : out.values) v = std::max(v, 0.0);
  }
  return out;
}

ForecastResult forecast(const Checkpoint& ckpt, const MonthlySeries& series, std::size_t horizon, bool clamp) {
  const StackedModel& model = ckpt.model;
  return forecast_with([&model](std::span<const double> w) { return predict_window(model, w); },
                       ckpt.normalizer, series, model.window, horizon, clamp);
}

}  // namespace firecast
