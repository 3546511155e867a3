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

#ifndef XLD_NUMCORE_PARALLEL_HPP_
#define XLD_NUMCORE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace xld::numcore {

// Number of worker threads used for row-parallel kernels. Defaults to the
// hardware concurrency, capped by the LATENT_DEBIAS_THREADS environment
// variable when it is set to a positive integer.
std::size_t worker_count();

// Splits [0, n) into contiguous chunks and runs `body(begin, end)` on each.
// Chunk boundaries depend only on n and worker_count(), and each index is
// handled by exactly one call, so kernels that write disjoint rows stay
// deterministic. Small ranges run inline.
void parallel_for(std::size_t n, std::size_t work_per_item,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace xld::numcore

#endif  // XLD_NUMCORE_PARALLEL_HPP_
