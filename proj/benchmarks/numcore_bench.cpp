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

#include <benchmark/benchmark.h>

#include <cmath>

#include "xld/numcore/matrix.hpp"
#include "xld/numcore/pca.hpp"
#include "xld/numcore/rng.hpp"

namespace {

using xld::numcore::Matrix;

Matrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  xld::numcore::Rng rng(seed);
  Matrix m(rows, cols);
  for (float& v : m.values()) v = static_cast<float>(rng.normal());
  return m;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = gaussian(n, n, 1);
  const Matrix b = gaussian(n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(xld::numcore::matmul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n * n * n));
}
BENCHMARK(BM_Matmul)->RangeMultiplier(2)->Range(64, 512);

void BM_MatmulTransposed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = gaussian(n, n, 3);
  const Matrix b = gaussian(n, n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(xld::numcore::matmul_bt(a, b));
}
BENCHMARK(BM_MatmulTransposed)->RangeMultiplier(2)->Range(64, 512);

// Isotropic data has no eigengap, the slowest case for the iterative path.
void BM_PcaTopKIsotropic(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Matrix x = gaussian(2000, d, 5);
  for (auto _ : state) benchmark::DoNotOptimize(xld::numcore::pca_top_k(x, 4));
}
BENCHMARK(BM_PcaTopKIsotropic)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_PcaTopKDecaying(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Matrix x = gaussian(2000, d, 7);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) *= static_cast<float>(std::pow(0.97, j));
  for (auto _ : state) benchmark::DoNotOptimize(xld::numcore::pca_top_k(x, 4));
}
BENCHMARK(BM_PcaTopKDecaying)->Arg(128)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_PcaGramPath(benchmark::State& state) {
  // Fewer rows than columns.
  const Matrix x = gaussian(64, static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(xld::numcore::pca_top_k(x, 4));
}
BENCHMARK(BM_PcaGramPath)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
