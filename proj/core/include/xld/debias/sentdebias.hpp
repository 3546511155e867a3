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

#ifndef XLD_DEBIAS_SENTDEBIAS_HPP_
#define XLD_DEBIAS_SENTDEBIAS_HPP_

#include <cstddef>
#include <vector>

#include "xld/debias/cda.hpp"
#include "xld/debias/space.hpp"
#include "xld/store/types.hpp"

namespace xld::debias {

inline constexpr std::size_t kDefaultSubspaceRank = 1;

// Orthonormal bias directions (rows) estimated from attribute sentences.
struct BiasSubspace {
  Matrix directions;  // k×d
  store::BiasType bias_type = store::BiasType::kGender;
  SpaceTag space = SpaceTag::kOriginal;
  store::LanguageId fit_language;
  std::vector<double> explained_variance;

  std::size_t k() const noexcept { return directions.rows(); }
  std::size_t dim() const noexcept { return directions.cols(); }

  friend bool operator==(const BiasSubspace&, const BiasSubspace&) = default;
};

// Counterfactual groups are centred within themselves and the centred
// vectors stacked, so only attribute variation remains. Per-term groups are
// reduced to their centroids, which are then centred together (between-term
// variation). The top-k principal directions of the result form the
// subspace. Throws RankError if fewer than k directions carry variance.
BiasSubspace fit_bias_subspace(const EmbeddingGroups& groups, std::size_t k,
                               store::BiasType bias_type, SpaceTag space,
                               const store::LanguageId& fit_language);

// h − (h·Vᵀ)·V. Throws ShapeError on a width mismatch and ParameterError
// when `space` differs from the space the subspace was fit in.
Matrix apply(const BiasSubspace& subspace, const Matrix& h, SpaceTag space);

}  // namespace xld::debias

#endif  // XLD_DEBIAS_SENTDEBIAS_HPP_
