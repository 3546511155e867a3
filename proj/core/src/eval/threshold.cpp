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

#include "xld/eval/threshold.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <string>

#include "xld/error.hpp"

namespace xld::eval {

double z_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw ParameterError("alpha must lie in (0, 0.5), got " + std::to_string(alpha));
  }
  const boost::math::normal_distribution<double> standard;
  const double z = boost::math::quantile(boost::math::complement(standard, alpha));
  return std::round(z * 1000.0) / 1000.0;
}

Threshold threshold(std::size_t n, double alpha) {
  if (n == 0) throw ParameterError("threshold needs at least one example");
  Threshold t;
  t.z = z_value(alpha);
  const double nn = static_cast<double>(n);
  t.x = nn / 2.0 + t.z * std::sqrt(nn / 4.0);
  // Guard against X landing a hair under an integer through rounding.
  t.critical_count = static_cast<std::size_t>(std::floor(t.x + 1e-9));
  if (t.critical_count > n) t.critical_count = n;
  t.threshold_percent = 100.0 * static_cast<double>(t.critical_count) / nn;
  t.threshold_deviation = t.threshold_percent - 50.0;
  return t;
}

}  // namespace xld::eval
