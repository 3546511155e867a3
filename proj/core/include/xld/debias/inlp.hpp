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

#ifndef XLD_DEBIAS_INLP_HPP_
#define XLD_DEBIAS_INLP_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "xld/debias/probe.hpp"
#include "xld/debias/space.hpp"
#include "xld/store/types.hpp"

namespace xld::debias {

// Projection onto the intersection of the nullspaces of every probe
// trained during fitting.
struct ProjectionMatrix {
  Matrix p;  // d×d, symmetric and idempotent
  std::size_t iterations_used = 0;
  std::vector<double> probe_accuracies;
  std::vector<double> majority_rates;
  store::BiasType bias_type = store::BiasType::kGender;
  SpaceTag space = SpaceTag::kOriginal;
  store::LanguageId fit_language;

  std::size_t dim() const noexcept { return p.rows(); }

  friend bool operator==(const ProjectionMatrix&, const ProjectionMatrix&) = default;
};

struct NullspaceStep {
  Matrix p;
  std::size_t removed = 0;  // rank of the orthonormalised probe rows
  bool degenerate = false;  // the probe rows were all (numerically) zero
};

// Orthonormalises the rows of `w` to B and returns (I − BᵀB)·p_acc. An
// all-zero `w` returns p_acc unchanged with `degenerate` set.
NullspaceStep nullspace_step(const Matrix& p_acc, const Matrix& w);

inline constexpr std::size_t kDefaultInlpIterations = 40;
inline constexpr double kDefaultStopAccuracyMargin = 0.02;

struct InlpOptions {
  std::size_t iterations = kDefaultInlpIterations;
  double stop_accuracy_margin = kDefaultStopAccuracyMargin;
  ProbeOptions probe;
};

// Repeatedly trains a probe on the projected data and removes its rowspace,
// until `iterations` probes have been removed or a probe's held-out accuracy
// is within stop_accuracy_margin of the majority rate.
ProjectionMatrix fit_inlp(const ProbeDataset& data, const InlpOptions& options, std::uint64_t seed,
                          store::BiasType bias_type, SpaceTag space,
                          const store::LanguageId& fit_language);

// h·Pᵀ (row-vector convention).
Matrix apply(const ProjectionMatrix& projection, const Matrix& h, SpaceTag space);

}  // namespace xld::debias

#endif  // XLD_DEBIAS_INLP_HPP_
