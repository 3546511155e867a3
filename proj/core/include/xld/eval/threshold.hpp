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

#ifndef XLD_EVAL_THRESHOLD_HPP_
#define XLD_EVAL_THRESHOLD_HPP_

#include <cstddef>

namespace xld::eval {

inline constexpr double kDefaultAlpha = 0.05;

struct Threshold {
  double z = 0.0;
  double x = 0.0;  // n/2 + z·√(n/4), before rounding
  std::size_t critical_count = 0;
  double threshold_percent = 50.0;
  double threshold_deviation = 0.0;
};

// One-sided standard normal critical value, rounded to three decimals
// (so z(0.05) = 1.645). Throws ParameterError unless 0 < alpha < 0.5.
double z_value(double alpha);

// Normal approximation to Binomial(n, ½). The critical count is X rounded
// down; a score is significant when it strictly exceeds threshold_percent.
Threshold threshold(std::size_t n, double alpha = kDefaultAlpha);

}  // namespace xld::eval

#endif  // XLD_EVAL_THRESHOLD_HPP_
