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

// Test-only reference implementations. Each one is a direct transcription of
// the defining equations using scalar loops over column-vector notation
// (W is read as N x M, pre_j = sum_k W[j][k] x_k), so it shares no code path
// with the library's row-vector kernels.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "firecast/cells.hpp"
#include "firecast/matrix.hpp"
#include "firecast/network.hpp"
#include "firecast/rng.hpp"

namespace firecast::oracle {

using Vec = std::vector<double>;

inline double sigma(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Library stores input weights M x N (row-vector convention); element [j][k]
// of the column-convention matrix is W(k, j).
inline Vec affine(const Matrix& W, const Vec& x, const Matrix& R, const Vec& y, const Matrix& b) {
  const std::size_t n = W.cols();
  Vec out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += W(k, j) * x[k];
    for (std::size_t k = 0; k < y.size(); ++k) s += R(k, j) * y[k];
    out[j] = s + b(0, j);
  }
  return out;
}

inline Vec to_vec(const Matrix& m) { return Vec(m.values().begin(), m.values().end()); }

struct LstmOut {
  Vec y, c;
};

inline LstmOut lstm_step(const LstmParams& p, const Vec& x, const Vec& y_prev, const Vec& c_prev) {
  const Vec zb = affine(p.W_z, x, p.R_z, y_prev, p.b_z);
  const Vec ib = affine(p.W_i, x, p.R_i, y_prev, p.b_i);
  const Vec fb = affine(p.W_f, x, p.R_f, y_prev, p.b_f);
  const Vec ob = affine(p.W_o, x, p.R_o, y_prev, p.b_o);
  LstmOut o{Vec(zb.size()), Vec(zb.size())};
  for (std::size_t j = 0; j < zb.size(); ++j) {
    const double z = std::tanh(zb[j]);
    const double i = sigma(ib[j]);
    const double f = sigma(fb[j]);
    o.c[j] = z * i + c_prev[j] * f;
    o.y[j] = std::tanh(o.c[j]) * sigma(ob[j]);
  }
  return o;
}

inline Vec gru_step(const GruParams& p, const Vec& x, const Vec& y_prev) {
  const std::size_t n = y_prev.size();
  const Vec zb = affine(p.W_z, x, p.R_z, y_prev, p.b_z);
  const Vec rb = affine(p.W_r, x, p.R_r, y_prev, p.b_r);
  Vec ry(n);
  for (std::size_t j = 0; j < n; ++j) ry[j] = sigma(rb[j]) * y_prev[j];
  const Vec hb = affine(p.W_h, x, p.R_h, ry, p.b_h);
  Vec h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double z = sigma(zb[j]);
    h[j] = z * y_prev[j] + (1.0 - z) * std::tanh(hb[j]);
  }
  return h;
}

struct RnnOut {
  Vec h, y;
};

inline RnnOut rnn_step(const RnnParams& p, const Vec& x, const Vec& h_prev) {
  const Vec pre = affine(p.W_xh, x, p.W_hh, h_prev, p.b_h);
  RnnOut o;
  for (double v : pre) o.h.push_back(std::tanh(v));
  const std::size_t k_out = p.W_yi.cols();
  for (std::size_t j = 0; j < k_out; ++j) {
    double s = p.b_y(0, j);
    for (std::size_t k = 0; k < o.h.size(); ++k) s += p.W_yi(k, j) * o.h[k];
    o.y.push_back(s);
  }
  return o;
}

// Whole-model forward: LSTM and GRU chained per step, dense head on the last
// GRU output.
inline double model_forward(const StackedModel& m, const Vec& window) {
  const std::size_t n = m.hidden;
  Vec y(n, 0.0), c(n, 0.0), h(n, 0.0);
  for (double v : window) {
    const LstmOut lo = lstm_step(m.lstm, Vec{v}, y, c);
    y = lo.y;
    c = lo.c;
    h = gru_step(m.gru, y, h);
  }
  Vec a(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = m.dense1.b(0, j);
    for (std::size_t k = 0; k < n; ++k) s += m.dense1.W(k, j) * h[k];
    a[j] = s > 0.0 ? s : 0.0;
  }
  double out = m.dense2.b(0, 0);
  for (std::size_t k = 0; k < n; ++k) out += m.dense2.W(k, 0) * a[k];
  return out;
}

// Central difference of `loss` w.r.t. every entry of `param`.
inline Matrix finite_difference(Matrix& param, const std::function<double()>& loss, double step = 1e-5) {
  Matrix g(param.rows(), param.cols());
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double saved = param[i];
    param[i] = saved + step;
    const double up = loss();
    param[i] = saved - step;
    const double down = loss();
    param[i] = saved;
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

// |a - n| / max(|a|, |n|, floor). The floor keeps near-zero entries, where
// both sides are dominated by rounding, from reading as large relative errors.
inline double max_relative_error(const Matrix& analytic, const Matrix& numeric, double floor = 1e-4) {
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double a = analytic[i], n = numeric[i];
    const double denom = std::max({std::abs(a), std::abs(n), floor});
    worst = std::max(worst, std::abs(a - n) / denom);
  }
  return worst;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 0.5) {
  Matrix m(r, c);
  for (double& x : m.values()) x = scale * (2.0 * rng.uniform() - 1.0);
  return m;
}

inline void randomize(std::vector<Matrix*> tensors, Rng& rng, double scale = 0.5) {
  for (Matrix* t : tensors) *t = random_matrix(t->rows(), t->cols(), rng, scale);
}

inline std::vector<Matrix*> tensors_of(LstmParams& p) {
  return {&p.W_z, &p.W_i, &p.W_f, &p.W_o, &p.R_z, &p.R_i, &p.R_f, &p.R_o, &p.b_z, &p.b_i, &p.b_f, &p.b_o};
}

inline std::vector<Matrix*> tensors_of(GruParams& p) {
  return {&p.W_z, &p.W_r, &p.W_h, &p.R_z, &p.R_r, &p.R_h, &p.b_z, &p.b_r, &p.b_h};
}

// Adam on a scalar, step by step as the algorithm is written out.
inline std::vector<double> adam_trajectory(double theta, const std::function<double(double)>& grad, int steps,
                                           double alpha = 0.001, double beta1 = 0.9, double beta2 = 0.999,
                                           double eps = 1e-8) {
  std::vector<double> out;
  double m = 0.0, v = 0.0;
  for (int t = 1; t <= steps; ++t) {
    const double g = grad(theta);
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v + (1.0 - beta2) * g * g;
    const double m_hat = m / (1.0 - std::pow(beta1, t));
    const double v_hat = v / (1.0 - std::pow(beta2, t));
    theta = theta - alpha * m_hat / (std::sqrt(v_hat) + eps);
    out.push_back(theta);
  }
  return out;
}

// Two-pass population mean/variance.
struct Moments {
  double mean, variance;
};
inline Moments two_pass(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(xs.size())};
}

}  // namespace firecast::oracle
