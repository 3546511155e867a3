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

#ifndef XLD_NUMCORE_GRAD_CHECK_HPP_
#define XLD_NUMCORE_GRAD_CHECK_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "xld/numcore/matrix.hpp"

namespace xld::numcore {

using ScalarObjective = std::function<double(std::span<const Matrix>)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  // Location of the worst entry.
  std::size_t tensor = 0;
  std::size_t index = 0;
  std::vector<Matrix> numeric;
};

struct GradCheckOptions {
  double epsilon = 1e-3;
  // Denominator floor, as a fraction of the largest analytic gradient entry.
  // Entries much smaller than the gradient's scale are dominated by f32
  // round-off in the objective and are compared against this floor instead.
  double scale_floor = 1e-2;
};

// Central differences (f(p+ε) − f(p−ε)) / 2ε against `analytic`, entry by
// entry. Relative error is |a − n| / max(|a|, |n|, floor). Throws
// DivergenceError if the objective returns a non-finite value.
GradCheckResult grad_check(const ScalarObjective& f, std::span<const Matrix> params,
                           std::span<const Matrix> analytic, const GradCheckOptions& options = {});

}  // namespace xld::numcore

#endif  // XLD_NUMCORE_GRAD_CHECK_HPP_
