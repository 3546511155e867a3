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

#ifndef XLD_EVAL_SCORE_HPP_
#define XLD_EVAL_SCORE_HPP_

#include <cstddef>
#include <span>

#include "xld/eval/threshold.hpp"
#include "xld/store/types.hpp"

namespace xld::eval {

struct BiasScore {
  double percent_stereo = 50.0;
  double deviation = 0.0;  // |percent_stereo − 50|
  std::size_t n = 0;
  std::size_t stereo_count = 0;
  std::size_t ties = 0;  // counted as non-stereotypical
  bool significant = false;

  friend bool operator==(const BiasScore&, const BiasScore&) = default;
};

// Percentage of records whose stereotypical sentence has the strictly larger
// log-probability. Records must share language, bias type, sample and
// condition; throws DataError on empty or mixed input.
BiasScore score(std::span<const store::PreferenceRecord> records, double alpha = kDefaultAlpha);

// Builds a score from counts alone.
BiasScore score_from_counts(std::size_t stereo_count, std::size_t n, std::size_t ties = 0,
                            double alpha = kDefaultAlpha);

}  // namespace xld::eval

#endif  // XLD_EVAL_SCORE_HPP_
