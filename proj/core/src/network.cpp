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

#include "firecast/network.hpp"

#include <cmath>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

DenseParams DenseParams::zeros(std::size_t in, std::size_t out, Activation f) {
  return DenseParams{Matrix(in, out), Matrix(1, out), f};
}

StackedModel StackedModel::zeros(std::size_t hidden, std::size_t window) {
  if (hidden == 0 || window == 0) throw ArgumentError("hidden and window must be >= 1");
  StackedModel m;
  m.lstm = LstmParams::zeros(kInputWidth, hidden);
  m.gru = GruParams::zeros(hidden, hidden);
  m.dense1 = DenseParams::zeros(hidden, hidden, Activation::kReLU);
  m.dense2 = DenseParams::zeros(hidden, 1, Activation::kLinear);
  m.hidden = hidden;
  m.window = window;
  return m;
}

std::vector<Matrix*> StackedModel::tensors() {
  return {&lstm.W_z, &lstm.R_z, &lstm.b_z, &lstm.W_i, &lstm.R_i, &lstm.b_i,
          &lstm.W_f, &lstm.R_f, &lstm.b_f, &lstm.W_o, &lstm.R_o, &lstm.b_o,
          &gru.W_z,  &gru.R_z,  &gru.b_z,  &gru.W_r,  &gru.R_r,  &gru.b_r,
          &gru.W_h,  &gru.R_h,  &gru.b_h,  &dense1.W, &dense1.b, &dense2.W,
          &dense2.b};
}

std::vector<const Matrix*> StackedModel::tensors() const {
  auto mut = const_cast<StackedModel*>(this)->tensors();
  return {mut.begin(), mut.end()};
}

std::vector<std::string> StackedModel::tensor_names() {
  return {"lstm.W_z", "lstm.R_z", "lstm.b_z", "lstm.W_i", "lstm.R_i", "lstm.b_i", "lstm.W_f",
          "lstm.R_f", "lstm.b_f", "lstm.W_o", "lstm.R_o", "lstm.b_o", "gru.W_z",  "gru.R_z",
          "gru.b_z",  "gru.W_r",  "gru.R_r",  "gru.b_r",  "gru.W_h",  "gru.R_h",  "gru.b_h",
          "dense1.W", "dense1.b", "dense2.W", "dense2.b"};
}

std::size_t StackedModel::parameter_count() const {
  std::size_t total = 0;
  for (const Matrix* t : tensors()) total += t->size();
  return total;
}

void StackedModel::validate() const {
  if (hidden == 0 || window == 0) throw ShapeError("model hidden and window must be >= 1");
  lstm.validate();
  gru.validate();
  if (lstm.input_width() != kInputWidth) {
    throw ShapeError(fmt::format("lstm input width must be {}, got {}", kInputWidth, lstm.input_width()));
  }
  if (lstm.hidden() != hidden || gru.hidden() != hidden || gru.input_width() != hidden) {
    throw ShapeError(fmt::format("recurrent widths do not match hidden={}", hidden));
  }
  if (dense1.W.rows() != hidden || dense1.W.cols() != hidden || dense1.b.rows() != 1 ||
      dense1.b.cols() != hidden) {
    throw ShapeError("dense1 must be hidden x hidden with a 1 x hidden bias");
  }
  if (dense2.W.rows() != hidden || dense2.W.cols() != 1 || dense2.b.rows() != 1 || dense2.b.cols() != 1) {
    throw ShapeError("dense2 must be hidden x 1 with a 1 x 1 bias");
  }
}

std::size_t stacked_parameter_count(std::size_t n) {
  constexpr std::size_t m = StackedModel::kInputWidth;
  return 4 * (n * m + n * n + n) + 3 * (n * n + n * n + n) + (n * n + n) + (n + 1);
}

Matrix he_normal_init(std::size_t rows, std::size_t cols, std::size_t fan_in, Rng& rng) {
  if (fan_in == 0) throw ArgumentError("he_normal_init: fan_in must be >= 1");
  const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
  Matrix out(rows, cols);
  for (double& x : out.values()) x = rng.normal(0.0, stddev);
  return out;
}

StackedModel init_model(std::size_t hidden, std::size_t window, Seed seed) {
  StackedModel m = StackedModel::zeros(hidden, window);
  Rng rng(seed.value);
  // Weights draw in canonical order; biases stay zero. A weight's fan-in is
  // its row count, the width of the vector it multiplies.
  Matrix* const weights[] = {&m.lstm.W_z, &m.lstm.R_z, &m.lstm.W_i, &m.lstm.R_i, &m.lstm.W_f, &m.lstm.R_f,
                             &m.lstm.W_o, &m.lstm.R_o, &m.gru.W_z,  &m.gru.R_z,  &m.gru.W_r,  &m.gru.R_r,
                             &m.gru.W_h,  &m.gru.R_h,  &m.dense1.W, &m.dense2.W};
  for (Matrix* w : weights) *w = he_normal_init(w->rows(), w->cols(), w->rows(), rng);
  return m;
}

namespace {

void check_window(const StackedModel& m, std::span<const double> values) {
  if (values.size() != m.window) {
    throw ShapeError(fmt::format("window has {} values, model expects {}", values.size(), m.window));
  }
}

}  // namespace

WindowOutput forward_window(const StackedModel& m, std::span<const double> window_values) {
  check_window(m, window_values);
  WindowTrace tr;
  tr.hidden = m.hidden;
  tr.window = m.window;

  std::vector<Matrix> xs;
  xs.reserve(window_values.size());
  for (double v : window_values) xs.push_back(Matrix(1, 1, {v}));
  tr.lstm = lstm_forward(m.lstm, xs);

  std::vector<Matrix> lstm_out;
  lstm_out.reserve(tr.lstm.size());
  for (const auto& s : tr.lstm) lstm_out.push_back(s.y);
  tr.gru = gru_forward(m.gru, lstm_out);

  tr.dense1_in = tr.gru.back().h;
  tr.dense1_pre = m.dense1.b;
  matmul_accumulate(tr.dense1_in, m.dense1.W, tr.dense1_pre);
  tr.dense1_out = apply(tr.dense1_pre, m.dense1.activation);

  Matrix out = m.dense2.b;
  matmul_accumulate(tr.dense1_out, m.dense2.W, out);
  out = apply(out, m.dense2.activation);
  tr.prediction = out[0];
  return WindowOutput{tr.prediction, std::move(tr)};
}

double predict_window(const StackedModel& m, std::span<const double> window_values) {
  return forward_window(m, window_values).prediction;
}

void backward_window_into(const StackedModel& m, const WindowTrace& tr, double d_prediction, ModelGrads& g) {
  if (tr.hidden != m.hidden || tr.window != m.window || tr.lstm.size() != m.window ||
      tr.gru.size() != m.window || tr.dense1_out.cols() != m.hidden) {
    throw StateError("backward_window: trace was not produced by this model's forward pass");
  }
  if (!g.lstm.W_z.same_shape(m.lstm.W_z) || !g.dense1.W.same_shape(m.dense1.W)) {
    throw ShapeError("backward_window: gradient buffers are not shaped like the model");
  }

  // Output head. dense2 is linear with one unit, so its pre-activation
  // gradient is d_prediction scaled by the activation slope.
  Matrix d_out2(1, 1, {d_prediction});
  {
    Matrix pre2 = m.dense2.b;
    matmul_accumulate(tr.dense1_out, m.dense2.W, pre2);
    d_out2[0] *= activate_deriv(pre2[0], m.dense2.activation);
  }
  matmul_at_accumulate(tr.dense1_out, d_out2, g.dense2.W);
  add_inplace(g.dense2.b, d_out2);

  Matrix d_pre1(1, m.hidden);
  matmul_bt_accumulate(d_out2, m.dense2.W, d_pre1);
  for (std::size_t j = 0; j < m.hidden; ++j) {
    d_pre1[j] *= activate_deriv(tr.dense1_pre[j], m.dense1.activation);
  }
  matmul_at_accumulate(tr.dense1_in, d_pre1, g.dense1.W);
  add_inplace(g.dense1.b, d_pre1);

  // Only the final GRU step feeds the head directly.
  std::vector<Matrix> d_gru_out(m.window, Matrix(1, m.hidden));
  matmul_bt_accumulate(d_pre1, m.dense1.W, d_gru_out.back());

  const std::vector<Matrix> d_lstm_out = gru_backward_into(m.gru, tr.gru, d_gru_out, g.gru);
  lstm_backward_into(m.lstm, tr.lstm, d_lstm_out, g.lstm);
}

ModelGrads backward_window(const StackedModel& m, const WindowTrace& trace, double d_prediction) {
  ModelGrads g = StackedModel::zeros(m.hidden, m.window);
  backward_window_into(m, trace, d_prediction, g);
  return g;
}

}  // namespace firecast
