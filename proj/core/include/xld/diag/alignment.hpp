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

#ifndef XLD_DIAG_ALIGNMENT_HPP_
#define XLD_DIAG_ALIGNMENT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "xld/store/types.hpp"

namespace xld::diag {

struct RetrievalResult {
  double accuracy = 0.0;
  std::size_t queries = 0;
  std::size_t correct = 0;
  // Queries whose best cosine was shared by more than one b-row; the lowest
  // row index wins such ties.
  std::size_t tied_queries = 0;
};

// For every aligned pair, retrieves the b-row with the highest cosine to
// the a-row and counts hits on the aligned partner. `pairs` may be oriented
// either way round; ids must resolve in both sets.
RetrievalResult retrieval_accuracy(const store::EmbeddingSet& a, const store::EmbeddingSet& b,
                                   const store::ParallelPairSet& pairs);

// Mean cosine over aligned pairs, in [-1, 1].
double mean_parallel_cosine(const store::EmbeddingSet& a, const store::EmbeddingSet& b,
                            const store::ParallelPairSet& pairs);

struct PlotPoint {
  std::string id;
  store::LanguageId language;
  double x = 0.0;
  double y = 0.0;
};

// Joint mean-centring and projection onto the top two principal
// components. Throws RankError with fewer than three points.
std::vector<PlotPoint> project_2d(std::span<const store::EmbeddingSet> sets);
// CSV with header `id,language,x,y`.
std::string plot_points_csv(std::span<const PlotPoint> points);

}  // namespace xld::diag

#endif  // XLD_DIAG_ALIGNMENT_HPP_
