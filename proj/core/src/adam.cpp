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

#include "firecast/adam.hpp"

#include <cmath>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

void AdamConfig::validate() const {
  if (!(alpha > 0.0)) throw ArgumentError(fmt::format("adam alpha must be > 0, got {}", alpha));
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ArgumentError(fmt::format("adam beta1 must be in [0,1), got {}", beta1));
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ArgumentError(fmt::format("adam beta2 must be in [0,1), got {}", beta2));
  if (!(epsilon > 0.0)) throw ArgumentError(fmt::format("adam epsilon must be > 0, got {}", epsilon));
}

AdamState AdamState::for_params(std::span<const Matrix* const> params) {
  AdamState s;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const Matrix* p : params) {
    s.m.emplace_back(p->rows(), p->cols());
    s.v.emplace_back(p->rows(), p->cols());
  }
  return s;
}

void adam_step(AdamState& state, const AdamConfig& cfg, std::span<Matrix* const> params,
               std::span<const Matrix* const> grads) {
  cfg.validate();
  if (params.size() != grads.size() || params.size() != state.m.size() || params.size() != state.v.size()) {
    throw ShapeError(fmt::format("adam: {} params, {} grads, {} moment tensors", params.size(), grads.size(),
                                 state.m.size()));
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (!params[k]->same_shape(*grads[k]) || !params[k]->same_shape(state.m[k]) ||
        !params[k]->same_shape(state.v[k])) {
      throw ShapeError(fmt::format("adam: tensor {} param {} vs grad {}", k, params[k]->shape_string(),
                                   grads[k]->shape_string()));
    }
    if (!all_finite(*grads[k])) throw NumericError(fmt::format("adam: non-finite gradient in tensor {}", k));
  }

  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);

  for (std::size_t k = 0; k < params.size(); ++k) {
    auto theta = params[k]->values();
    auto g = grads[k]->values();
    auto m = state.m[k].values();
    auto v = state.v[k].values();
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      theta[i] -= cfg.alpha * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    }
  }
}

double clip_global_norm(std::span<Matrix* const> grads, double max_norm) {
  double sq = 0.0;
  for (const Matrix* g : grads)
    for (double x : g->values()) sq += x * x;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (Matrix* g : grads) scale_inplace(*g, s);
  }
  return norm;
}

}  // namespace firecast
