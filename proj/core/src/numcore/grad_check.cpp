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

#include "xld/numcore/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "xld/error.hpp"

namespace xld::numcore {
namespace {

double evaluate(const ScalarObjective& f, std::span<const Matrix> params) {
  const double value = f(params);
  if (!std::isfinite(value)) throw DivergenceError("objective evaluated to a non-finite value");
  return value;
}

}  // namespace

GradCheckResult grad_check(const ScalarObjective& f, std::span<const Matrix> params,
                           std::span<const Matrix> analytic, const GradCheckOptions& options) {
  if (params.size() != analytic.size()) throw ShapeError("grad_check tensor count mismatch");
  double scale = 0.0;
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (!params[t].same_shape(analytic[t])) {
      throw ShapeError("grad_check: gradient " + std::to_string(t) + " has shape " +
                       analytic[t].shape_string() + ", parameter " + params[t].shape_string());
    }
    scale = std::max(scale, max_abs(analytic[t]));
  }
  const double floor = std::max(1e-12, options.scale_floor * scale);

  std::vector<Matrix> work(params.begin(), params.end());
  GradCheckResult result;
  evaluate(f, work);
  for (std::size_t t = 0; t < work.size(); ++t) {
    Matrix numeric(work[t].rows(), work[t].cols());
    for (std::size_t i = 0; i < work[t].size(); ++i) {
      float& slot = work[t].values()[i];
      const float original = slot;
      slot = original + static_cast<float>(options.epsilon);
      const double plus = evaluate(f, work);
      const double step_up = static_cast<double>(slot) - original;
      slot = original - static_cast<float>(options.epsilon);
      const double minus = evaluate(f, work);
      const double step_down = original - static_cast<double>(slot);
      slot = original;
      const double n = (plus - minus) / (step_up + step_down);
      numeric.values()[i] = static_cast<float>(n);

      const double a = analytic[t].values()[i];
      const double abs_err = std::fabs(a - n);
      const double rel = abs_err / std::max({std::fabs(a), std::fabs(n), floor});
      result.max_absolute_error = std::max(result.max_absolute_error, abs_err);
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.tensor = t;
        result.index = i;
      }
    }
    result.numeric.push_back(std::move(numeric));
  }
  return result;
}

}  // namespace xld::numcore
