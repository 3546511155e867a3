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

#include "xld/numcore/orthogonal.hpp"

#include <cmath>
#include <vector>

#include "xld/error.hpp"

namespace xld::numcore {
namespace {

using Row = std::vector<double>;

double dot64(const Row& a, const Row& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<Row> to_rows(const Matrix& m) {
  std::vector<Row> rows(m.rows(), Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

Matrix from_rows(const std::vector<Row>& rows, std::size_t cols) {
  Matrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = static_cast<float>(rows[i][j]);
  return out;
}

// Appends the orthonormalised candidates to `basis`, returns how many were added.
std::size_t gram_schmidt_into(std::vector<Row>& basis, const std::vector<Row>& candidates,
                              double drop_tolerance) {
  std::size_t added = 0;
  for (Row v : candidates) {
    const double original = std::sqrt(dot64(v, v));
    if (original == 0.0) continue;
    // Two passes of modified Gram–Schmidt for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Row& b : basis) {
        const double c = dot64(v, b);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * b[j];
      }
    }
    const double residual = std::sqrt(dot64(v, v));
    if (residual <= drop_tolerance * original) continue;
    for (double& x : v) x /= residual;
    basis.push_back(std::move(v));
    ++added;
  }
  return added;
}

}  // namespace

Matrix orthonormalize_rows(const Matrix& rows, double drop_tolerance) {
  std::vector<Row> basis;
  gram_schmidt_into(basis, to_rows(rows), drop_tolerance);
  return from_rows(basis, rows.cols());
}

Matrix extend_orthonormal_basis(const Matrix& basis, const Matrix& candidates,
                                double drop_tolerance) {
  if (basis.rows() > 0 && basis.cols() != candidates.cols()) {
    throw ShapeError("basis " + basis.shape_string() + " vs candidates " +
                     candidates.shape_string());
  }
  std::vector<Row> all = to_rows(basis);
  const std::size_t before = all.size();
  gram_schmidt_into(all, to_rows(candidates), drop_tolerance);
  std::vector<Row> fresh(all.begin() + static_cast<std::ptrdiff_t>(before), all.end());
  return from_rows(fresh, candidates.cols());
}

Matrix complement_projection(const Matrix& basis, std::size_t dim) {
  if (basis.rows() > 0 && basis.cols() != dim) {
    throw ShapeError("basis " + basis.shape_string() + " in dimension " + std::to_string(dim));
  }
  Matrix p(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      double acc = i == j ? 1.0 : 0.0;
      for (std::size_t r = 0; r < basis.rows(); ++r)
        acc -= static_cast<double>(basis(r, i)) * basis(r, j);
      p(i, j) = static_cast<float>(acc);
      p(j, i) = static_cast<float>(acc);
    }
  }
  return p;
}

}  // namespace xld::numcore
