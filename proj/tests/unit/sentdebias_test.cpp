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

#include <gtest/gtest.h>

#include <cmath>

#include "support/test_support.hpp"
#include "xld/debias/sentdebias.hpp"
#include "xld/error.hpp"
#include "xld/numcore/orthogonal.hpp"
#include "xld/numcore/rng.hpp"

namespace xld::debias {
namespace {

using xld::testing::random_matrix;

const store::LanguageId kEn("en");

Matrix unit_direction(std::size_t d, std::uint64_t seed) {
  return numcore::orthonormalize_rows(random_matrix(1, d, seed));
}

// Counterfactual pairs sharing random content and differing by ±u.
EmbeddingGroups planted_pairs(const Matrix& u, std::size_t pairs, std::uint64_t seed) {
  const std::size_t d = u.cols();
  const Matrix content = random_matrix(pairs, d, seed);
  numcore::Rng rng(seed + 1);
  EmbeddingGroups g;
  g.kind = GroupKind::kCounterfactual;
  for (std::size_t p = 0; p < pairs; ++p) {
    Matrix m(2, d);
    const double shift = 1.0 + 0.2 * rng.normal();
    for (std::size_t j = 0; j < d; ++j) {
      m(0, j) = content(p, j) + static_cast<float>(shift * u(0, j) + 0.05 * rng.normal());
      m(1, j) = content(p, j) - static_cast<float>(shift * u(0, j) + 0.05 * rng.normal());
    }
    g.keys.push_back("g" + std::to_string(p));
    g.groups.push_back(std::move(m));
  }
  return g;
}

TEST(SentDebias, RecoversPlantedDirection) {
  const Matrix u = unit_direction(16, 1);
  const auto s = fit_bias_subspace(planted_pairs(u, 50, 2), 1, store::BiasType::kGender,
                                   SpaceTag::kOriginal, kEn);
  ASSERT_EQ(s.k(), 1u);
  EXPECT_NEAR(std::abs(numcore::dot(s.directions.row(0), u.row(0))), 1.0, 1e-3);
  EXPECT_EQ(s.fit_language, kEn);
  EXPECT_EQ(s.explained_variance.size(), 1u);
}

TEST(SentDebias, ApplyRemovesSubspaceAndIsIdempotent) {
  const Matrix u = unit_direction(12, 3);
  auto groups = planted_pairs(u, 40, 4);
  const auto s = fit_bias_subspace(groups, 3, store::BiasType::kRace, SpaceTag::kLatent, kEn);
  const Matrix h = random_matrix(30, 12, 5, 3.0);
  const Matrix once = apply(s, h, SpaceTag::kLatent);
  EXPECT_LT(numcore::max_abs(numcore::matmul_bt(once, s.directions)), 1e-5);
  EXPECT_LT(numcore::max_abs_diff(apply(s, once, SpaceTag::kLatent), once), 1e-5);
  // Components orthogonal to the subspace are untouched.
  const Matrix p = numcore::complement_projection(s.directions, 12);
  EXPECT_LT(numcore::max_abs_diff(once, numcore::matmul(h, p)), 1e-4);
}

TEST(SentDebias, PerTermGroupsUseCentroids) {
  // Terms whose sentences are centred at ±c·u plus noise.
  const Matrix u = unit_direction(10, 6);
  EmbeddingGroups g;
  g.kind = GroupKind::kPerTerm;
  for (int t = 0; t < 4; ++t) {
    Matrix m = random_matrix(25, 10, 10 + t, 0.3);
    const float c = static_cast<float>(t - 1.5);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < 10; ++j) m(i, j) += c * 4.0f * u(0, j);
    g.keys.push_back("t" + std::to_string(t));
    g.groups.push_back(std::move(m));
  }
  const auto s = fit_bias_subspace(g, 1, store::BiasType::kReligion, SpaceTag::kOriginal, kEn);
  EXPECT_GT(std::abs(numcore::dot(s.directions.row(0), u.row(0))), 0.98);
}

TEST(SentDebias, Errors) {
  const Matrix u = unit_direction(4, 7);
  const auto groups = planted_pairs(u, 5, 8);
  EXPECT_THROW(fit_bias_subspace(groups, 0, store::BiasType::kGender, SpaceTag::kOriginal, kEn),
               ParameterError);
  EXPECT_THROW(fit_bias_subspace(groups, 5, store::BiasType::kGender, SpaceTag::kOriginal, kEn),
               RankError);
  EXPECT_THROW(fit_bias_subspace(EmbeddingGroups{}, 1, store::BiasType::kGender,
                                 SpaceTag::kOriginal, kEn),
               DataError);
  // Pairs that differ only along u cannot support a rank-2 subspace.
  EmbeddingGroups pure;
  for (int p = 0; p < 5; ++p) {
    Matrix m(2, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      m(0, j) = u(0, j) * (1 + p);
      m(1, j) = -u(0, j) * (1 + p);
    }
    pure.groups.push_back(m);
  }
  EXPECT_THROW(fit_bias_subspace(pure, 2, store::BiasType::kGender, SpaceTag::kOriginal, kEn),
               RankError);

  const auto s = fit_bias_subspace(groups, 1, store::BiasType::kGender, SpaceTag::kOriginal, kEn);
  EXPECT_THROW(apply(s, Matrix(1, 4), SpaceTag::kLatent), ParameterError);
  EXPECT_THROW(apply(s, Matrix(1, 5), SpaceTag::kOriginal), ShapeError);
}

}  // namespace
}  // namespace xld::debias
