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
#include <span>
#include <vector>

#include "firecast/matrix.hpp"

namespace firecast {

// Block-output recurrence: every gate reads the previous block output y_{t-1}.
// Input weights are M x N, recurrent weights N x N, biases 1 x N.
struct LstmParams {
  Matrix W_z, W_i, W_f, W_o;
  Matrix R_z, R_i, R_f, R_o;
  Matrix b_z, b_i, b_f, b_o;

  static LstmParams zeros(std::size_t input_width, std::size_t hidden);
  std::size_t input_width() const noexcept { return W_z.rows(); }
  std::size_t hidden() const noexcept { return W_z.cols(); }
  // Throws ShapeError if the twelve tensors are not mutually coherent.
  void validate() const;
  friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

struct GruParams {
  Matrix W_z, W_r, W_h;
  Matrix R_z, R_r, R_h;
  Matrix b_z, b_r, b_h;

  static GruParams zeros(std::size_t input_width, std::size_t hidden);
  std::size_t input_width() const noexcept { return W_z.rows(); }
  std::size_t hidden() const noexcept { return W_z.cols(); }
  void validate() const;
  friend bool operator==(const GruParams&, const GruParams&) = default;
};

// Plain Elman unit with a linear read-out.
struct RnnParams {
  Matrix W_xh, W_hh, b_h;
  Matrix W_yi, b_y;

  static RnnParams zeros(std::size_t input_width, std::size_t hidden, std::size_t output_width);
  void validate() const;
};

struct LstmStepTrace {
  Matrix x, y_prev, c_prev;
  Matrix z, i, f, o;  // post-activation gate values
  Matrix c, tanh_c, y;
};

struct GruStepTrace {
  Matrix x, y_prev;
  Matrix z, r;
  Matrix r_y;      // r (.) y_prev
  Matrix h_tilde;  // tanh of the candidate pre-activation
  Matrix h;
};

struct RnnStepTrace {
  Matrix x, h_prev, h, y;
};

struct LstmStepResult {
  Matrix y, c;
  LstmStepTrace trace;
};

struct GruStepResult {
  Matrix h;
  GruStepTrace trace;
};

struct RnnStepResult {
  Matrix h, y;
  RnnStepTrace trace;
};

LstmStepResult lstm_step(const LstmParams& p, const Matrix& x_t, const Matrix& y_prev,
                         const Matrix& c_prev);
GruStepResult gru_step(const GruParams& p, const Matrix& x_t, const Matrix& y_prev);
RnnStepResult rnn_step(const RnnParams& p, const Matrix& x_t, const Matrix& h_prev);

// Runs a whole sequence from a zero initial state.
std::vector<LstmStepTrace> lstm_forward(const LstmParams& p, std::span<const Matrix> xs);
std::vector<GruStepTrace> gru_forward(const GruParams& p, std::span<const Matrix> xs);

// Backpropagation through time over a completed forward pass. d_y[t] is the
// loss gradient arriving at the block output of step t from outside the cell
// (a zero matrix where nothing flows in). Parameter gradients are added into
// `grads`, which must be shaped like `p`; the returned vector holds dL/dx_t.
// Throws StateError if the traces and d_y disagree in length or width.
std::vector<Matrix> lstm_backward_into(const LstmParams& p, std::span<const LstmStepTrace> traces,
                                       std::span<const Matrix> d_y, LstmParams& grads);
std::vector<Matrix> gru_backward_into(const GruParams& p, std::span<const GruStepTrace> traces,
                                      std::span<const Matrix> d_y, GruParams& grads);

struct LstmBackward {
  LstmParams grads;
  std::vector<Matrix> d_x;
};

struct GruBackward {
  GruParams grads;
  std::vector<Matrix> d_x;
};

LstmBackward lstm_backward(const LstmParams& p, std::span<const LstmStepTrace> traces,
                           std::span<const Matrix> d_y);
GruBackward gru_backward(const GruParams& p, std::span<const GruStepTrace> traces,
                         std::span<const Matrix> d_y);

}  // namespace firecast
