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

#include "xld/autoencoder/loss.hpp"
#include "xld/autoencoder/model.hpp"
#include "xld/numcore/adamw.hpp"

namespace {

using xld::numcore::Matrix;
namespace ae = xld::autoencoder;

Matrix gaussian(std::size_t rows, std::size_t cols, xld::numcore::Rng& rng) {
  Matrix m(rows, cols);
  for (float& v : m.values()) v = static_cast<float>(rng.normal());
  return m;
}

// One forward/backward pass of the four-term loss on a batch of pairs.
void BM_PairLossStep(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  xld::numcore::Rng rng(9);
  const xld::store::LanguageId en("en"), fr("fr");
  const xld::store::LanguageId langs[] = {en, fr};
  const auto model = ae::init_autoencoder({d, 128, {512, 256}}, langs, rng);
  const Matrix x = gaussian(64, d, rng);
  const Matrix y = gaussian(64, d, rng);
  for (auto _ : state) {
    auto grads = ae::zeros_like(model);
    benchmark::DoNotOptimize(ae::pair_loss_backward(model, x, en, y, fr, grads));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_PairLossStep)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  xld::numcore::Rng rng(10);
  const xld::store::LanguageId en("en");
  const xld::store::LanguageId langs[] = {en};
  const auto model = ae::init_autoencoder({1024, 128, {512, 256}}, langs, rng);
  const Matrix x = gaussian(static_cast<std::size_t>(state.range(0)), 1024, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ae::encode(model, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encode)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
