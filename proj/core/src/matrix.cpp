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

#include "firecast/matrix.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "firecast/error.hpp"

namespace firecast {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw ShapeError(fmt::format("matrix dimensions must be positive, got {}x{}", rows, cols));
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw ShapeError(fmt::format("matrix dimensions must be positive, got {}x{}", rows, cols));
  }
  if (data_.size() != rows * cols) {
    throw ShapeError(fmt::format("matrix {}x{} needs {} values, got {}", rows, cols, rows * cols,
                                 data_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  if (rows_ == 0 || cols_ == 0) throw ShapeError("matrix literal must be non-empty");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("matrix literal rows differ in length");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::row(std::span<const double> values) {
  return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::filled(std::size_t rows, std::size_t cols, double value) {
  return Matrix(rows, cols, std::vector<double>(rows * cols, value));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void Matrix::set_zero() noexcept {
  for (double& x : data_) x = 0.0;
}

std::string Matrix::shape_string() const { return fmt::format("{}x{}", rows_, cols_); }

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ShapeError(fmt::format("{}: shape mismatch {} vs {}", what, a.shape_string(), b.shape_string()));
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError(fmt::format("matmul: cannot multiply {} by {}", a.shape_string(), b.shape_string()));
  }
  Matrix out(a.rows(), b.cols());
  matmul_accumulate(a, b, out);
  return out;
}

// i-k-j order keeps the inner loop contiguous in both b and out; each out(i,j)
// still sums over k in increasing order.
void matmul_accumulate(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.rows() || out.rows() != a.rows() || out.cols() != b.cols()) {
    throw ShapeError(fmt::format("matmul: {} * {} into {}", a.shape_string(), b.shape_string(),
                                 out.shape_string()));
  }
  const std::size_t n = a.rows(), k_dim = a.cols(), m = b.cols();
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  double* po = out.values().data();
  for (std::size_t i = 0; i < n; ++i) {
    double* orow = po + i * m;
    for (std::size_t k = 0; k < k_dim; ++k) {
      const double aik = pa[i * k_dim + k];
      const double* brow = pb + k * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += aik * brow[j];
    }
  }
}

void matmul_bt_accumulate(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.cols() != b.cols() || out.rows() != a.rows() || out.cols() != b.rows()) {
    throw ShapeError(fmt::format("matmul_bt: {} * ({})^T into {}", a.shape_string(), b.shape_string(),
                                 out.shape_string()));
  }
  const std::size_t n = a.rows(), k_dim = a.cols(), m = b.rows();
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  double* po = out.values().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = pa + i * k_dim;
    for (std::size_t j = 0; j < m; ++j) {
      const double* brow = pb + j * k_dim;
      double s = 0.0;
      for (std::size_t k = 0; k < k_dim; ++k) s += arow[k] * brow[k];
      po[i * m + j] += s;
    }
  }
}

void matmul_at_accumulate(const Matrix& a, const Matrix& b, Matrix& out) {
  if (a.rows() != b.rows() || out.rows() != a.cols() || out.cols() != b.cols()) {
    throw ShapeError(fmt::format("matmul_at: ({})^T * {} into {}", a.shape_string(), b.shape_string(),
                                 out.shape_string()));
  }
  const std::size_t n = a.cols(), k_dim = a.rows(), m = b.cols();
  const double* pa = a.values().data();
  const double* pb = b.values().data();
  double* po = out.values().data();
  for (std::size_t k = 0; k < k_dim; ++k) {
    const double* brow = pb + k * m;
    for (std::size_t i = 0; i < n; ++i) {
      const double aki = pa[k * n + i];
      if (aki == 0.0) continue;
      double* orow = po + i * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += aki * brow[j];
    }
  }
}

Matrix ew(const Matrix& a, const Matrix& b, ElementwiseOp op) {
  require_same_shape(a, b, "elementwise");
  Matrix out = a;
  auto o = out.values();
  auto bv = b.values();
  switch (op) {
    case ElementwiseOp::kAdd:
      for (std::size_t i = 0; i < o.size(); ++i) o[i] += bv[i];
      break;
    case ElementwiseOp::kSub:
      for (std::size_t i = 0; i < o.size(); ++i) o[i] -= bv[i];
      break;
    case ElementwiseOp::kMul:
      for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bv[i];
      break;
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix add_row_bias(const Matrix& a, const Matrix& bias) {
  if (bias.rows() != 1 || bias.cols() != a.cols()) {
    throw ShapeError(fmt::format("bias {} does not fit rows of {}", bias.shape_string(), a.shape_string()));
  }
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += bias[j];
  return out;
}

void add_inplace(Matrix& out, const Matrix& a) {
  require_same_shape(out, a, "add_inplace");
  auto o = out.values();
  auto av = a.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += av[i];
}

void scale_inplace(Matrix& out, double s) {
  for (double& x : out.values()) x *= s;
}

bool all_finite(const Matrix& a) noexcept {
  for (double x : a.values())
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace firecast
