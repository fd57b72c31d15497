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

#include "firecast/activation.hpp"

#include <cmath>

namespace firecast {

std::string_view activation_name(Activation f) noexcept {
  switch (f) {
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
    case Activation::kReLU: return "relu";
    case Activation::kLinear: return "linear";
  }
  return "unknown";
}

namespace {

// Branches keep exp() from overflowing for large |x|.
double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double activate(double x, Activation f) noexcept {
  switch (f) {
    case Activation::kSigmoid: return sigmoid(x);
    case Activation::kTanh: return std::tanh(x);
    case Activation::kReLU: return x > 0.0 ? x : 0.0;
    case Activation::kLinear: return x;
  }
  return x;
}

double activate_deriv(double x, Activation f) noexcept {
  switch (f) {
    case Activation::kSigmoid: {
      const double s = sigmoid(x);
      return s * (1.0 - s);
    }
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kReLU: return x > 0.0 ? 1.0 : 0.0;
    case Activation::kLinear: return 1.0;
  }
  return 1.0;
}

Matrix apply(const Matrix& a, Activation f) {
  if (f == Activation::kLinear) return a;
  Matrix out = a;
  for (double& x : out.values()) x = activate(x, f);
  return out;
}

Matrix apply_deriv(const Matrix& pre_activation, Activation f) {
  Matrix out = pre_activation;
  for (double& x : out.values()) x = activate_deriv(x, f);
  return out;
}

}  // namespace firecast
