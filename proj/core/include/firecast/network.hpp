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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "firecast/activation.hpp"
#include "firecast/cells.hpp"
#include "firecast/matrix.hpp"
#include "firecast/rng.hpp"

namespace firecast {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

struct DenseParams {
  Matrix W;  // in x out
  Matrix b;  // 1 x out
  Activation activation = Activation::kLinear;

  static DenseParams zeros(std::size_t in, std::size_t out, Activation f);
  friend bool operator==(const DenseParams&, const DenseParams&) = default;
};

// LSTM(hidden) -> GRU(hidden) -> Dense(hidden, ReLU) -> Dense(1, Linear) over a
// univariate window. The dense head reads only the final GRU output.
struct StackedModel {
  static constexpr std::size_t kInputWidth = 1;
  static constexpr std::size_t kDefaultHidden = 256;
  static constexpr std::size_t kDefaultWindow = 12;

  LstmParams lstm;
  GruParams gru;
  DenseParams dense1;
  DenseParams dense2;
  std::size_t window = kDefaultWindow;
  std::size_t hidden = kDefaultHidden;

  // Model with every tensor zero; dense activations set.
  static StackedModel zeros(std::size_t hidden, std::size_t window);

  // Canonical tensor order, shared by initialization, the optimizer and the
  // checkpoint container: for each LSTM gate z,i,f,o its W,R,b; then GRU
  // gates z,r,h likewise; then dense1 W,b; then dense2 W,b.
  std::vector<Matrix*> tensors();
  std::vector<const Matrix*> tensors() const;
  static std::vector<std::string> tensor_names();

  std::size_t parameter_count() const;
  // Throws ShapeError if any invariant of the architecture is broken.
  void validate() const;

  friend bool operator==(const StackedModel&, const StackedModel&) = default;
};

// Gradients share the model's layout so they line up with tensors() 1:1.
using ModelGrads = StackedModel;

// Closed form: 4(NM+N^2+N) + 3(2N^2+N) + (N^2+N) + (N+1) with M = 1.
std::size_t stacked_parameter_count(std::size_t hidden);

Matrix he_normal_init(std::size_t rows, std::size_t cols, std::size_t fan_in, Rng& rng);

// He-normal weights (row-major draws, canonical tensor order), zero biases.
StackedModel init_model(std::size_t hidden, std::size_t window, Seed seed);

struct WindowTrace {
  std::size_t hidden = 0;
  std::size_t window = 0;
  std::vector<LstmStepTrace> lstm;
  std::vector<GruStepTrace> gru;
  Matrix dense1_in;   // final GRU output
  Matrix dense1_pre;  // before ReLU
  Matrix dense1_out;
  double prediction = 0.0;
};

struct WindowOutput {
  double prediction;
  WindowTrace trace;
};

WindowOutput forward_window(const StackedModel& m, std::span<const double> window_values);
// Inference only; identical arithmetic to forward_window without keeping a trace.
double predict_window(const StackedModel& m, std::span<const double> window_values);

// Adds d(prediction)/d(theta) * d_prediction into `grads` (shaped like m).
void backward_window_into(const StackedModel& m, const WindowTrace& trace, double d_prediction,
                          ModelGrads& grads);
ModelGrads backward_window(const StackedModel& m, const WindowTrace& trace, double d_prediction);

}  // namespace firecast
