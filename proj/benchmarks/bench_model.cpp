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

#include <benchmark/benchmark.h>

#include <vector>

#include "firecast/adam.hpp"
#include "firecast/network.hpp"

namespace firecast {
namespace {

std::vector<double> sample_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 + 0.4 * static_cast<double>(i % 7) / 7.0;
  return w;
}

void BM_ForwardWindow(benchmark::State& state) {
  const auto hidden = static_cast<std::size_t>(state.range(0));
  const StackedModel m = init_model(hidden, 12, Seed{2024});
  const auto w = sample_window(12);
  for (auto _ : state) benchmark::DoNotOptimize(predict_window(m, w));
}
BENCHMARK(BM_ForwardWindow)->Arg(16)->Arg(64)->Arg(256);

void BM_ForwardBackwardWindow(benchmark::State& state) {
  const auto hidden = static_cast<std::size_t>(state.range(0));
  const StackedModel m = init_model(hidden, 12, Seed{2024});
  ModelGrads g = StackedModel::zeros(hidden, 12);
  const auto w = sample_window(12);
  for (auto _ : state) {
    const WindowOutput out = forward_window(m, w);
    backward_window_into(m, out.trace, out.prediction - 0.5, g);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ForwardBackwardWindow)->Arg(16)->Arg(64)->Arg(256);

void BM_AdamStep(benchmark::State& state) {
  const auto hidden = static_cast<std::size_t>(state.range(0));
  StackedModel m = init_model(hidden, 12, Seed{2024});
  StackedModel g = init_model(hidden, 12, Seed{7});
  const auto params = m.tensors();
  const auto grad_ptrs = g.tensors();
  const std::vector<const Matrix*> grads(grad_ptrs.begin(), grad_ptrs.end());
  AdamState st = AdamState::for_params(std::vector<const Matrix*>(params.begin(), params.end()));
  for (auto _ : state) {
    adam_step(st, AdamConfig{}, params, grads);
    benchmark::ClobberMemory();
  }
  state.counters["params"] = static_cast<double>(m.parameter_count());
}
BENCHMARK(BM_AdamStep)->Arg(16)->Arg(256);

}  // namespace
}  // namespace firecast

BENCHMARK_MAIN();
