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

#include "xld/numcore/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace xld::numcore {
namespace {

constexpr std::size_t kMinWorkPerThread = 1 << 16;

std::size_t read_thread_cap() {
  const char* env = std::getenv("LATENT_DEBIAS_THREADS");
  if (env == nullptr) return 0;
  try {
    const long value = std::stol(env);
    return value > 0 ? static_cast<std::size_t>(value) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

std::size_t worker_count() {
  static const std::size_t count = [] {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t cap = read_thread_cap();
    return cap > 0 ? std::min(hw, cap) : hw;
  }();
  return count;
}

void parallel_for(std::size_t n, std::size_t work_per_item,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t total_work = n * std::max<std::size_t>(1, work_per_item);
  const std::size_t threads =
      std::min({worker_count(), n, std::max<std::size_t>(1, total_work / kMinWorkPerThread)});
  if (threads <= 1) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(0, std::min(n, chunk));
}

}  // namespace xld::numcore
