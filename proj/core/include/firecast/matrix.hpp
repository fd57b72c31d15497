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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace firecast {

// Dense row-major matrix of doubles. Vectors are 1xN rows; layers compute
// y = x * W + b.
class Matrix {
 public:
  Matrix() = default;
  // Zero-filled. Throws ShapeError if either dimension is 0.
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  // Nested-list literal, e.g. Matrix{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix row(std::span<const double> values);
  static Matrix filled(std::size_t rows, std::size_t cols, double value);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  std::span<const double> row_span(std::size_t r) const noexcept {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  void set_zero() noexcept;

  // "RxC", used in error messages.
  std::string shape_string() const;

  // Bitwise equality of shape and payload.
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class ElementwiseOp { kAdd, kSub, kMul };

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix ew(const Matrix& a, const Matrix& b, ElementwiseOp op);
Matrix transpose(const Matrix& a);

// a + bias where bias is 1 x a.cols(), added to every row.
Matrix add_row_bias(const Matrix& a, const Matrix& bias);

// In-place kernels used by the recurrent passes. All check shapes.
//   out += a * b
void matmul_accumulate(const Matrix& a, const Matrix& b, Matrix& out);
//   out += a * b^T
void matmul_bt_accumulate(const Matrix& a, const Matrix& b, Matrix& out);
//   out += a^T * b
void matmul_at_accumulate(const Matrix& a, const Matrix& b, Matrix& out);
//   out += a
void add_inplace(Matrix& out, const Matrix& a);
//   out *= s
void scale_inplace(Matrix& out, double s);

bool all_finite(const Matrix& a) noexcept;

}  // namespace firecast
