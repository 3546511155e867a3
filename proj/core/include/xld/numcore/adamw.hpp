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

#ifndef XLD_NUMCORE_ADAMW_HPP_
#define XLD_NUMCORE_ADAMW_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "xld/numcore/matrix.hpp"

namespace xld::numcore {

struct AdamWConfig {
  float learning_rate = 1e-4f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float epsilon = 1e-8f;
  float weight_decay = 0.01f;
};

// Moment accumulators are allocated on the first step to match the
// parameter shapes and must keep matching afterwards.
struct AdamWState {
  AdamWConfig config;
  std::uint64_t step = 0;
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;
};

// One AdamW update with decoupled weight decay:
//   p ← p − lr·wd·p;  p ← p − lr·m̂/(√v̂ + ε)
void adamw_step(std::span<Matrix* const> params, std::span<const Matrix> grads,
                AdamWState& state);

}  // namespace xld::numcore

#endif  // XLD_NUMCORE_ADAMW_HPP_
