// Copyright 2026 The xld Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XLD_NUMCORE_MATRIX_HPP_
#define XLD_NUMCORE_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace xld::numcore {

// Dense row-major single-precision matrix. Every model tensor in the toolkit
// (embeddings, latents, MLP weights, projections) is one of these.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, float fill = 0.0f);
  Matrix(std::size_t rows, std::size_t cols, std::vector<float> data);

  static Matrix from_rows(std::initializer_list<std::initializer_list<float>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  float& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  float operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<float> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<float> values() noexcept { return data_; }
  std::span<const float> values() const noexcept { return data_; }
  const std::vector<float>& storage() const noexcept { return data_; }

  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shape_string() const;

  void fill(float value);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

// a · b. Throws ShapeError when a.cols() != b.rows().
Matrix matmul(const Matrix& a, const Matrix& b);
// a · bᵀ.
Matrix matmul_bt(const Matrix& a, const Matrix& b);
// aᵀ · b.
Matrix matmul_at(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, float s);

// Adds a 1×cols row vector to every row in place.
void add_row_vector(Matrix& a, const Matrix& row_vector);
// Column sums as a 1×cols matrix.
Matrix column_sums(const Matrix& a);
Matrix column_means(const Matrix& a);

// Rows of `a` selected by index, in the given order.
Matrix gather_rows(const Matrix& a, std::span<const std::size_t> indices);
// Vertical concatenation; all inputs must share cols().
Matrix vstack(std::span<const Matrix> parts);

double frobenius_norm(const Matrix& a);
// max |a_ij|
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double dot(std::span<const float> a, std::span<const float> b);
double norm(std::span<const float> a);

bool all_finite(const Matrix& a) noexcept;
// Throws DivergenceError naming `context` if any entry is NaN or infinite.
void require_finite(const Matrix& a, const std::string& context);

}  // namespace xld::numcore

#endif  // XLD_NUMCORE_MATRIX_HPP_
