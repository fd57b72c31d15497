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

#include "firecast/cells.hpp"

#include <cmath>

#include <fmt/format.h>

#include "firecast/activation.hpp"
#include "firecast/error.hpp"

namespace firecast {

namespace {

void expect_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError(fmt::format("{}: expected {}x{}, got {}", name, rows, cols, m.shape_string()));
  }
}

// b + x W + y R
Matrix gate_pre(const Matrix& x, const Matrix& W, const Matrix& y, const Matrix& R, const Matrix& b) {
  Matrix out = b;
  matmul_accumulate(x, W, out);
  matmul_accumulate(y, R, out);
  return out;
}

Matrix sigmoid_of(Matrix m) {
  for (double& v : m.values()) v = activate(v, Activation::kSigmoid);
  return m;
}

Matrix tanh_of(Matrix m) {
  for (double& v : m.values()) v = std::tanh(v);
  return m;
}

// Gradient of a gate's parameters given the gradient at its pre-activation.
void accumulate_gate(const Matrix& x, const Matrix& y_prev, const Matrix& d_pre, Matrix& gW, Matrix& gR,
                     Matrix& gb) {
  matmul_at_accumulate(x, d_pre, gW);
  matmul_at_accumulate(y_prev, d_pre, gR);
  add_inplace(gb, d_pre);
}

}  // namespace

LstmParams LstmParams::zeros(std::size_t m, std::size_t n) {
  LstmParams p;
  for (Matrix* w : {&p.W_z, &p.W_i, &p.W_f, &p.W_o}) *w = Matrix(m, n);
  for (Matrix* r : {&p.R_z, &p.R_i, &p.R_f, &p.R_o}) *r = Matrix(n, n);
  for (Matrix* b : {&p.b_z, &p.b_i, &p.b_f, &p.b_o}) *b = Matrix(1, n);
  return p;
}

void LstmParams::validate() const {
  const std::size_t m = W_z.rows(), n = W_z.cols();
  if (m == 0 || n == 0) throw ShapeError("lstm: empty parameters");
  for (const Matrix* w : {&W_z, &W_i, &W_f, &W_o}) expect_shape(*w, m, n, "lstm input weight");
  for (const Matrix* r : {&R_z, &R_i, &R_f, &R_o}) expect_shape(*r, n, n, "lstm recurrent weight");
  for (const Matrix* b : {&b_z, &b_i, &b_f, &b_o}) expect_shape(*b, 1, n, "lstm bias");
}

GruParams GruParams::zeros(std::size_t m, std::size_t n) {
  GruParams p;
  for (Matrix* w : {&p.W_z, &p.W_r, &p.W_h}) *w = Matrix(m, n);
  for (Matrix* r : {&p.R_z, &p.R_r, &p.R_h}) *r = Matrix(n, n);
  for (Matrix* b : {&p.b_z, &p.b_r, &p.b_h}) *b = Matrix(1, n);
  return p;
}

void GruParams::validate() const {
  const std::size_t m = W_z.rows(), n = W_z.cols();
  if (m == 0 || n == 0) throw ShapeError("gru: empty parameters");
  for (const Matrix* w : {&W_z, &W_r, &W_h}) expect_shape(*w, m, n, "gru input weight");
  for (const Matrix* r : {&R_z, &R_r, &R_h}) expect_shape(*r, n, n, "gru recurrent weight");
  for (const Matrix* b : {&b_z, &b_r, &b_h}) expect_shape(*b, 1, n, "gru bias");
}

RnnParams RnnParams::zeros(std::size_t m, std::size_t n, std::size_t k) {
  return RnnParams{Matrix(m, n), Matrix(n, n), Matrix(1, n), Matrix(n, k), Matrix(1, k)};
}

void RnnParams::validate() const {
  const std::size_t m = W_xh.rows(), n = W_xh.cols(), k = W_yi.cols();
  if (m == 0 || n == 0 || k == 0) throw ShapeError("rnn: empty parameters");
  expect_shape(W_hh, n, n, "rnn W_hh");
  expect_shape(b_h, 1, n, "rnn b_h");
  expect_shape(W_yi, n, k, "rnn W_yi");
  expect_shape(b_y, 1, k, "rnn b_y");
}

LstmStepResult lstm_step(const LstmParams& p, const Matrix& x_t, const Matrix& y_prev, const Matrix& c_prev) {
  const std::size_t m = p.input_width(), n = p.hidden();
  expect_shape(x_t, 1, m, "lstm x_t");
  expect_shape(y_prev, 1, n, "lstm y_prev");
  expect_shape(c_prev, 1, n, "lstm c_prev");

  LstmStepTrace tr;
  tr.x = x_t;
  tr.y_prev = y_prev;
  tr.c_prev = c_prev;
  tr.z = tanh_of(gate_pre(x_t, p.W_z, y_prev, p.R_z, p.b_z));
  tr.i = sigmoid_of(gate_pre(x_t, p.W_i, y_prev, p.R_i, p.b_i));
  tr.f = sigmoid_of(gate_pre(x_t, p.W_f, y_prev, p.R_f, p.b_f));
  tr.o = sigmoid_of(gate_pre(x_t, p.W_o, y_prev, p.R_o, p.b_o));

  tr.c = Matrix(1, n);
  tr.tanh_c = Matrix(1, n);
  tr.y = Matrix(1, n);
  for (std::size_t j = 0; j < n; ++j) {
    tr.c[j] = tr.z[j] * tr.i[j] + c_prev[j] * tr.f[j];
    tr.tanh_c[j] = std::tanh(tr.c[j]);
    tr.y[j] = tr.tanh_c[j] * tr.o[j];
  }
  return LstmStepResult{tr.y, tr.c, std::move(tr)};
}

GruStepResult gru_step(const GruParams& p, const Matrix& x_t, const Matrix& y_prev) {
  const std::size_t m = p.input_width(), n = p.hidden();
  expect_shape(x_t, 1, m, "gru x_t");
  expect_shape(y_prev, 1, n, "gru y_prev");

  GruStepTrace tr;
  tr.x = x_t;
  tr.y_prev = y_prev;
  tr.z = sigmoid_of(gate_pre(x_t, p.W_z, y_prev, p.R_z, p.b_z));
  tr.r = sigmoid_of(gate_pre(x_t, p.W_r, y_prev, p.R_r, p.b_r));
  tr.r_y = ew(tr.r, y_prev, ElementwiseOp::kMul);
  tr.h_tilde = tanh_of(gate_pre(x_t, p.W_h, tr.r_y, p.R_h, p.b_h));

  tr.h = Matrix(1, n);
  for (std::size_t j = 0; j < n; ++j) {
    tr.h[j] = tr.z[j] * y_prev[j] + (1.0 - tr.z[j]) * tr.h_tilde[j];
  }
  return GruStepResult{tr.h, std::move(tr)};
}

RnnStepResult rnn_step(const RnnParams& p, const Matrix& x_t, const Matrix& h_prev) {
  p.validate();
  const std::size_t m = p.W_xh.rows(), n = p.W_xh.cols();
  expect_shape(x_t, 1, m, "rnn x_t");
  expect_shape(h_prev, 1, n, "rnn h_prev");

  RnnStepTrace tr;
  tr.x = x_t;
  tr.h_prev = h_prev;
  Matrix pre = p.b_h;
  matmul_accumulate(h_prev, p.W_hh, pre);
  matmul_accumulate(x_t, p.W_xh, pre);
  tr.h = tanh_of(std::move(pre));
  tr.y = p.b_y;
  matmul_accumulate(tr.h, p.W_yi, tr.y);
  return RnnStepResult{tr.h, tr.y, std::move(tr)};
}

std::vector<LstmStepTrace> lstm_forward(const LstmParams& p, std::span<const Matrix> xs) {
  p.validate();
  std::vector<LstmStepTrace> traces;
  traces.reserve(xs.size());
  Matrix y(1, p.hidden()), c(1, p.hidden());
  for (const Matrix& x : xs) {
    auto step = lstm_step(p, x, y, c);
    y = std::move(step.y);
    c = std::move(step.c);
    traces.push_back(std::move(step.trace));
  }
  return traces;
}

std::vector<GruStepTrace> gru_forward(const GruParams& p, std::span<const Matrix> xs) {
  p.validate();
  std::vector<GruStepTrace> traces;
  traces.reserve(xs.size());
  Matrix y(1, p.hidden());
  for (const Matrix& x : xs) {
    auto step = gru_step(p, x, y);
    y = std::move(step.h);
    traces.push_back(std::move(step.trace));
  }
  return traces;
}

namespace {

void check_sequence(std::size_t traces, std::span<const Matrix> d_y, std::size_t n, const char* cell) {
  if (traces != d_y.size()) {
    throw StateError(fmt::format("{} backward: {} traces but {} upstream gradients", cell, traces, d_y.size()));
  }
  for (const Matrix& d : d_y) {
    if (d.rows() != 1 || d.cols() != n) {
      throw StateError(fmt::format("{} backward: upstream gradient {} does not match width {}", cell,
                                   d.shape_string(), n));
    }
  }
}

}  // namespace

std::vector<Matrix> lstm_backward_into(const LstmParams& p, std::span<const LstmStepTrace> traces,
                                       std::span<const Matrix> d_y, LstmParams& g) {
  const std::size_t m = p.input_width(), n = p.hidden();
  check_sequence(traces.size(), d_y, n, "lstm");
  for (const auto& tr : traces) {
    if (tr.y.cols() != n || tr.x.cols() != m) throw StateError("lstm backward: trace width does not match params");
  }

  std::vector<Matrix> d_x(traces.size(), Matrix(1, m));
  Matrix dy_next(1, n), dc_next(1, n);
  Matrix dz(1, n), di(1, n), df(1, n), dout(1, n);

  for (std::size_t t = traces.size(); t-- > 0;) {
    const LstmStepTrace& tr = traces[t];
    for (std::size_t j = 0; j < n; ++j) {
      const double dy = d_y[t][j] + dy_next[j];
      const double o = tr.o[j], i = tr.i[j], f = tr.f[j], z = tr.z[j], tc = tr.tanh_c[j];
      const double dc = dc_next[j] + dy * o * (1.0 - tc * tc);
      dout[j] = dy * tc * o * (1.0 - o);
      dz[j] = dc * i * (1.0 - z * z);
      di[j] = dc * z * i * (1.0 - i);
      df[j] = dc * tr.c_prev[j] * f * (1.0 - f);
      dc_next[j] = dc * f;
    }
    accumulate_gate(tr.x, tr.y_prev, dz, g.W_z, g.R_z, g.b_z);
    accumulate_gate(tr.x, tr.y_prev, di, g.W_i, g.R_i, g.b_i);
    accumulate_gate(tr.x, tr.y_prev, df, g.W_f, g.R_f, g.b_f);
    accumulate_gate(tr.x, tr.y_prev, dout, g.W_o, g.R_o, g.b_o);

    dy_next.set_zero();
    matmul_bt_accumulate(dz, p.R_z, dy_next);
    matmul_bt_accumulate(di, p.R_i, dy_next);
    matmul_bt_accumulate(df, p.R_f, dy_next);
    matmul_bt_accumulate(dout, p.R_o, dy_next);

    matmul_bt_accumulate(dz, p.W_z, d_x[t]);
    matmul_bt_accumulate(di, p.W_i, d_x[t]);
    matmul_bt_accumulate(df, p.W_f, d_x[t]);
    matmul_bt_accumulate(dout, p.W_o, d_x[t]);
  }
  return d_x;
}

std::vector<Matrix> gru_backward_into(const GruParams& p, std::span<const GruStepTrace> traces,
                                      std::span<const Matrix> d_y, GruParams& g) {
  const std::size_t m = p.input_width(), n = p.hidden();
  check_sequence(traces.size(), d_y, n, "gru");
  for (const auto& tr : traces) {
    if (tr.h.cols() != n || tr.x.cols() != m) throw StateError("gru backward: trace width does not match params");
  }

  std::vector<Matrix> d_x(traces.size(), Matrix(1, m));
  Matrix dh_next(1, n);
  Matrix dz(1, n), dr(1, n), dcand(1, n), d_ry(1, n);

  for (std::size_t t = traces.size(); t-- > 0;) {
    const GruStepTrace& tr = traces[t];
    Matrix dh = d_y[t];
    add_inplace(dh, dh_next);

    for (std::size_t j = 0; j < n; ++j) {
      const double z = tr.z[j], ht = tr.h_tilde[j];
      dz[j] = dh[j] * (tr.y_prev[j] - ht) * z * (1.0 - z);
      dcand[j] = dh[j] * (1.0 - z) * (1.0 - ht * ht);
    }
    // The reset gate acts on y_{t-1} inside the candidate's recurrent product.
    d_ry.set_zero();
    matmul_bt_accumulate(dcand, p.R_h, d_ry);
    for (std::size_t j = 0; j < n; ++j) {
      const double r = tr.r[j];
      dr[j] = d_ry[j] * tr.y_prev[j] * r * (1.0 - r);
    }

    accumulate_gate(tr.x, tr.y_prev, dz, g.W_z, g.R_z, g.b_z);
    accumulate_gate(tr.x, tr.y_prev, dr, g.W_r, g.R_r, g.b_r);
    accumulate_gate(tr.x, tr.r_y, dcand, g.W_h, g.R_h, g.b_h);

    for (std::size_t j = 0; j < n; ++j) dh_next[j] = dh[j] * tr.z[j] + d_ry[j] * tr.r[j];
    matmul_bt_accumulate(dz, p.R_z, dh_next);
    matmul_bt_accumulate(dr, p.R_r, dh_next);

    matmul_bt_accumulate(dz, p.W_z, d_x[t]);
    matmul_bt_accumulate(dr, p.W_r, d_x[t]);
    matmul_bt_accumulate(dcand, p.W_h, d_x[t]);
  }
  return d_x;
}

LstmBackward lstm_backward(const LstmParams& p, std::span<const LstmStepTrace> traces,
                           std::span<const Matrix> d_y) {
  LstmBackward out{LstmParams::zeros(p.input_width(), p.hidden()), {}};
  out.d_x = lstm_backward_into(p, traces, d_y, out.grads);
  return out;
}

GruBackward gru_backward(const GruParams& p, std::span<const GruStepTrace> traces, std::span<const Matrix> d_y) {
  GruBackward out{GruParams::zeros(p.input_width(), p.hidden()), {}};
  out.d_x = gru_backward_into(p, traces, d_y, out.grads);
  return out;
}

}  // namespace firecast
