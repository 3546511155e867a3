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

#include "xld/numcore/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "xld/error.hpp"
#include "xld/numcore/parallel.hpp"

namespace xld::numcore {

Matrix::Matrix(std::size_t rows, std::size_t cols, float fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("buffer of " + std::to_string(data_.size()) + " values cannot form a " +
                     std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<float>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<float> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged row list");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0f;
  return m;
}

std::string Matrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void Matrix::fill(float value) { std::fill(data_.begin(), data_.end(), value); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul " + a.shape_string() + " by " + b.shape_string());
  }
  Matrix out(a.rows(), b.cols());
  const std::size_t inner = a.cols();
  const std::size_t width = b.cols();
  parallel_for(a.rows(), inner * width, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      float* dst = out.row(i).data();
      const float* src = a.row(i).data();
      for (std::size_t k = 0; k < inner; ++k) {
        const float s = src[k];
        if (s == 0.0f) continue;
        const float* brow = b.row(k).data();
        for (std::size_t j = 0; j < width; ++j) dst[j] += s * brow[j];
      }
    }
  });
  require_finite(out, "matmul");
  return out;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw ShapeError("matmul_bt " + a.shape_string() + " by transpose of " + b.shape_string());
  }
  Matrix out(a.rows(), b.rows());
  const std::size_t inner = a.cols();
  parallel_for(a.rows(), inner * b.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const float* ai = a.row(i).data();
      for (std::size_t j = 0; j < b.rows(); ++j) {
        const float* bj = b.row(j).data();
        float acc = 0.0f;
        for (std::size_t k = 0; k < inner; ++k) acc += ai[k] * bj[k];
        out(i, j) = acc;
      }
    }
  });
  require_finite(out, "matmul_bt");
  return out;
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw ShapeError("matmul_at transpose of " + a.shape_string() + " by " + b.shape_string());
  }
  Matrix out(a.cols(), b.cols());
  const std::size_t width = b.cols();
  parallel_for(a.cols(), a.rows() * width, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const float* arow = a.row(r).data();
      const float* brow = b.row(r).data();
      for (std::size_t i = begin; i < end; ++i) {
        const float s = arow[i];
        if (s == 0.0f) continue;
        float* dst = out.row(i).data();
        for (std::size_t j = 0; j < width; ++j) dst[j] += s * brow[j];
      }
    }
  });
  require_finite(out, "matmul_at");
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError("add " + a.shape_string() + " and " + b.shape_string());
  Matrix out = a;
  auto dst = out.values();
  auto src = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("subtract " + a.shape_string() + " and " + b.shape_string());
  }
  Matrix out = a;
  auto dst = out.values();
  auto src = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
  return out;
}

Matrix scale(const Matrix& a, float s) {
  Matrix out = a;
  for (float& v : out.values()) v *= s;
  return out;
}

void add_row_vector(Matrix& a, const Matrix& row_vector) {
  if (row_vector.rows() != 1 || row_vector.cols() != a.cols()) {
    throw ShapeError("row vector " + row_vector.shape_string() + " against " + a.shape_string());
  }
  const float* v = row_vector.row(0).data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    float* dst = a.row(i).data();
    for (std::size_t j = 0; j < a.cols(); ++j) dst[j] += v[j];
  }
}

Matrix column_sums(const Matrix& a) {
  Matrix out(1, a.cols());
  float* dst = out.row(0).data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const float* src = a.row(i).data();
    for (std::size_t j = 0; j < a.cols(); ++j) dst[j] += src[j];
  }
  return out;
}

Matrix column_means(const Matrix& a) {
  if (a.rows() == 0) throw ShapeError("column mean of an empty matrix");
  std::vector<double> acc(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc[j] += a(i, j);
  Matrix out(1, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    out(0, j) = static_cast<float>(acc[j] / static_cast<double>(a.rows()));
  return out;
}

Matrix gather_rows(const Matrix& a, std::span<const std::size_t> indices) {
  Matrix out(indices.size(), a.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= a.rows()) {
      throw ShapeError("row index " + std::to_string(indices[i]) + " out of range for " +
                       a.shape_string());
    }
    std::copy_n(a.row(indices[i]).data(), a.cols(), out.row(i).data());
  }
  return out;
}

Matrix vstack(std::span<const Matrix> parts) {
  if (parts.empty()) return {};
  std::size_t rows = 0;
  const std::size_t cols = parts.front().cols();
  for (const auto& p : parts) {
    if (p.cols() != cols) throw ShapeError("vstack with mismatched column counts");
    rows += p.rows();
  }
  std::vector<float> data;
  data.reserve(rows * cols);
  for (const auto& p : parts) data.insert(data.end(), p.values().begin(), p.values().end());
  return Matrix(rows, cols, std::move(data));
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (float v : a.values()) acc += static_cast<double>(v) * v;
  return std::sqrt(acc);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (float v : a.values()) m = std::max(m, static_cast<double>(std::fabs(v)));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("compare " + a.shape_string() + " and " + b.shape_string());
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(static_cast<double>(a.values()[i]) - b.values()[i]));
  }
  return m;
}

double dot(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw ShapeError("dot of unequal lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * b[i];
  return acc;
}

double norm(std::span<const float> a) { return std::sqrt(dot(a, a)); }

bool all_finite(const Matrix& a) noexcept {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](float v) { return std::isfinite(v); });
}

void require_finite(const Matrix& a, const std::string& context) {
  if (!all_finite(a)) throw DivergenceError("non-finite value produced by " + context);
}

}  // namespace xld::numcore
