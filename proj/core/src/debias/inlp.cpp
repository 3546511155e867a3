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

#include "xld/debias/inlp.hpp"

#include "xld/error.hpp"
#include "xld/numcore/orthogonal.hpp"

namespace xld::debias {

NullspaceStep nullspace_step(const Matrix& p_acc, const Matrix& w) {
  if (p_acc.rows() != p_acc.cols()) throw ShapeError("projection must be square");
  if (w.cols() != p_acc.rows()) {
    throw ShapeError("probe weights " + w.shape_string() + " against projection " +
                     p_acc.shape_string());
  }
  const Matrix basis = numcore::orthonormalize_rows(w);
  if (basis.rows() == 0) return {p_acc, 0, true};
  const Matrix complement = numcore::complement_projection(basis, p_acc.rows());
  return {numcore::matmul(complement, p_acc), basis.rows(), false};
}

ProjectionMatrix fit_inlp(const ProbeDataset& data, const InlpOptions& options, std::uint64_t seed,
                          store::BiasType bias_type, SpaceTag space,
                          const store::LanguageId& fit_language) {
  if (options.iterations < 1) throw ParameterError("INLP needs at least one iteration");
  data.validate();
  const std::size_t d = data.x.cols();

  ProjectionMatrix result;
  result.bias_type = bias_type;
  result.space = space;
  result.fit_language = fit_language;
  result.p = Matrix::identity(d);

  // Removed directions are kept as one orthonormal basis and P rebuilt as
  // I − QᵀQ each round. Probe rows are first restricted to the range of the
  // current P, so this equals composing nullspace_step left-multiplications
  // while staying exactly symmetric.
  Matrix removed(0, d);
  ProbeDataset projected{data.x, data.labels};
  for (std::size_t it = 0; it < options.iterations; ++it) {
    const ProbeResult probe = train_probe(projected, seed + it, options.probe);
    result.probe_accuracies.push_back(probe.accuracy);
    result.majority_rates.push_back(probe.majority_rate);
    if (probe.accuracy <= probe.majority_rate + options.stop_accuracy_margin) break;

    const Matrix w_in_range = numcore::matmul(probe.weights, result.p);
    const Matrix fresh = numcore::extend_orthonormal_basis(removed, w_in_range);
    if (fresh.rows() == 0) break;
    const Matrix parts[] = {removed, fresh};
    removed = numcore::vstack(parts);
    result.p = numcore::complement_projection(removed, d);
    ++result.iterations_used;
    projected.x = numcore::matmul(data.x, result.p);
  }
  return result;
}

Matrix apply(const ProjectionMatrix& projection, const Matrix& h, SpaceTag space) {
  if (space != projection.space) {
    throw ParameterError("projection was fit in the " + std::string(to_string(projection.space)) +
                         " space but applied in the " + std::string(to_string(space)) + " space");
  }
  if (h.cols() != projection.dim()) {
    throw ShapeError("projection of width " + std::to_string(projection.dim()) + " applied to " +
                     h.shape_string());
  }
  return numcore::matmul_bt(h, projection.p);
}

}  // namespace xld::debias
