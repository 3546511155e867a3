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

#ifndef XLD_NUMCORE_ORTHOGONAL_HPP_
#define XLD_NUMCORE_ORTHOGONAL_HPP_

#include <cstddef>

#include "xld/numcore/matrix.hpp"

namespace xld::numcore {

inline constexpr double kGramSchmidtDropTolerance = 1e-8;

// Modified Gram–Schmidt over the rows of `rows` (double accumulation). Rows
// whose residual norm falls below `drop_tolerance` times their original norm
// are dropped, so the result has rank(rows) orthonormal rows.
Matrix orthonormalize_rows(const Matrix& rows, double drop_tolerance = kGramSchmidtDropTolerance);

// Orthonormalises `candidates` against an existing orthonormal `basis` and
// returns the new rows only (possibly zero of them).
Matrix extend_orthonormal_basis(const Matrix& basis, const Matrix& candidates,
                                double drop_tolerance = kGramSchmidtDropTolerance);

// I − BᵀB for orthonormal rows B (d×d).
Matrix complement_projection(const Matrix& basis, std::size_t dim);

}  // namespace xld::numcore

#endif  // XLD_NUMCORE_ORTHOGONAL_HPP_
