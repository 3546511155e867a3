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

#include "xld/debias/sentdebias.hpp"

#include "xld/error.hpp"
#include "xld/numcore/pca.hpp"

namespace xld::debias {
namespace {

Matrix stack_centered_groups(const EmbeddingGroups& groups) {
  std::vector<Matrix> parts;
  for (const auto& g : groups.groups) {
    if (g.rows() == 0) continue;
    Matrix centered = g;
    const Matrix mean = numcore::column_means(g);
    for (std::size_t i = 0; i < centered.rows(); ++i)
      for (std::size_t j = 0; j < centered.cols(); ++j) centered(i, j) -= mean(0, j);
    parts.push_back(std::move(centered));
  }
  return numcore::vstack(parts);
}

Matrix stack_term_centroids(const EmbeddingGroups& groups) {
  std::vector<Matrix> parts;
  for (const auto& g : groups.groups)
    if (g.rows() > 0) parts.push_back(numcore::column_means(g));
  return numcore::vstack(parts);
}

}  // namespace

BiasSubspace fit_bias_subspace(const EmbeddingGroups& groups, std::size_t k,
                               store::BiasType bias_type, SpaceTag space,
                               const store::LanguageId& fit_language) {
  if (k < 1) throw ParameterError("subspace rank k must be at least 1");
  const std::size_t dim = groups.dim();
  for (const auto& g : groups.groups) {
    if (g.rows() > 0 && g.cols() != dim) throw ShapeError("embedding groups differ in width");
  }
  if (dim == 0) throw DataError("no attribute embeddings to fit a bias subspace on");
  if (k > dim) {
    throw RankError("k=" + std::to_string(k) + " exceeds embedding width " + std::to_string(dim));
  }

  Matrix stacked;
  numcore::PcaResult pca;
  if (groups.kind == GroupKind::kCounterfactual) {
    stacked = stack_centered_groups(groups);
    if (stacked.rows() < k + 1) {
      throw RankError("need at least " + std::to_string(k + 1) + " vectors, have " +
                      std::to_string(stacked.rows()));
    }
    pca = numcore::pca_top_k_centered(stacked, k);
  } else {
    stacked = stack_term_centroids(groups);
    if (stacked.rows() < k + 1) {
      throw RankError("need at least " + std::to_string(k + 1) + " attribute terms, have " +
                      std::to_string(stacked.rows()));
    }
    pca = numcore::pca_top_k(stacked, k);
  }
  if (pca.rank_limited) {
    throw RankError("attribute variation spans only " + std::to_string(pca.components.rows()) +
                    " directions, k=" + std::to_string(k) + " requested");
  }
  return BiasSubspace{std::move(pca.components), bias_type, space, fit_language,
                      std::move(pca.explained_variance)};
}

Matrix apply(const BiasSubspace& subspace, const Matrix& h, SpaceTag space) {
  if (space != subspace.space) {
    throw ParameterError("subspace was fit in the " + std::string(to_string(subspace.space)) +
                         " space but applied in the " + std::string(to_string(space)) + " space");
  }
  if (h.cols() != subspace.dim()) {
    throw ShapeError("subspace of width " + std::to_string(subspace.dim()) + " applied to " +
                     h.shape_string());
  }
  const Matrix& v = subspace.directions;
  Matrix out = h;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t c = 0; c < v.rows(); ++c) {
      // Project against the running residual (modified Gram–Schmidt order).
      const double coef = numcore::dot(out.row(i), v.row(c));
      for (std::size_t j = 0; j < h.cols(); ++j)
        out(i, j) = static_cast<float>(out(i, j) - coef * v(c, j));
    }
  }
  return out;
}

}  // namespace xld::debias
