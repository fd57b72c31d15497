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

#pragma once

#include <string_view>

#include "firecast/matrix.hpp"

namespace firecast {

enum class Activation { kSigmoid, kTanh, kReLU, kLinear };

std::string_view activation_name(Activation f) noexcept;

double activate(double x, Activation f) noexcept;
// Derivative evaluated at the pre-activation value. ReLU'(0) is 0.
double activate_deriv(double pre_activation, Activation f) noexcept;

Matrix apply(const Matrix& a, Activation f);
Matrix apply_deriv(const Matrix& pre_activation, Activation f);

}  // namespace firecast
