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

#include <cstdint>
#include <span>
#include <vector>

#include "firecast/matrix.hpp"

namespace firecast {

struct AdamConfig {
  double alpha = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  // Throws ArgumentError unless 0 <= beta < 1, alpha > 0, epsilon > 0.
  void validate() const;
  friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::uint64_t t = 0;

  // Zero moments shaped like `params`.
  static AdamState for_params(std::span<const Matrix* const> params);
};

// One step of Adam:
//   t <- t + 1
//   m <- b1 m + (1 - b1) g
//   v <- b2 v + (1 - b2) g*g
//   theta <- theta - alpha * m_hat / (sqrt(v_hat) + eps)
// with m_hat = m / (1 - b1^t), v_hat = v / (1 - b2^t). Epsilon is added after
// the square root. Shapes and finiteness are checked for every tensor before
// anything is written, so a failed call leaves params and state untouched.
void adam_step(AdamState& state, const AdamConfig& cfg, std::span<Matrix* const> params,
               std::span<const Matrix* const> grads);

// Rescales all gradients together so their global L2 norm is at most
// max_norm. Returns the norm before clipping. Not part of the plain algorithm;
// training only calls it when clipping is switched on.
double clip_global_norm(std::span<Matrix* const> grads, double max_norm);

}  // namespace firecast
