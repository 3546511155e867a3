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

#ifndef XLD_NUMCORE_PCA_HPP_
#define XLD_NUMCORE_PCA_HPP_

#include <cstddef>
#include <vector>

#include "xld/numcore/matrix.hpp"

namespace xld::numcore {

// Eigen-decomposition of a symmetric n×n matrix stored row-major in double.
// Eigenvalues are sorted descending; `vectors` holds the matching unit
// eigenvectors as rows (n×n, row-major).
struct SymmetricEigen {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> vectors;
  int sweeps = 0;
};

// Cyclic Jacobi rotations until every off-diagonal entry is negligible.
SymmetricEigen jacobi_eigen(std::vector<double> symmetric, std::size_t n, int max_sweeps = 100);

struct PcaResult {
  // k'×d, rows orthonormal, ordered by descending explained variance. Each
  // row's largest-magnitude entry is positive.
  Matrix components;
  // Variance (1/(n-1) normalisation) captured by each returned component.
  std::vector<double> explained_variance;
  // Set when the data has fewer than k non-degenerate directions; only the
  // available components are returned in that case.
  bool rank_limited = false;
};

// Top-k principal directions of the rows of `x`. The rows are mean-centred
// internally. Requires 1 <= k <= min(rows - 1, cols). Up to 128 rows or
// columns the covariance (or Gram matrix) is decomposed with jacobi_eigen;
// wider inputs use seeded block subspace iteration with a Jacobi
// Rayleigh-Ritz step.
PcaResult pca_top_k(const Matrix& x, std::size_t k);

// Same as pca_top_k but the rows are taken as already centred.
PcaResult pca_top_k_centered(const Matrix& centered, std::size_t k);

}  // namespace xld::numcore

#endif  // XLD_NUMCORE_PCA_HPP_
