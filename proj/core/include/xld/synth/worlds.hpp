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

#ifndef XLD_SYNTH_WORLDS_HPP_
#define XLD_SYNTH_WORLDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "xld/numcore/matrix.hpp"
#include "xld/store/annotations_io.hpp"
#include "xld/store/types.hpp"

namespace xld::synth {

// Languages sharing a low-dimensional semantic vector s per sentence. Each
// language sees x = s·A + b + ε with its own random linear map A and a large
// offset b, so raw embeddings of parallel sentences are far apart.
struct WorldConfig {
  std::vector<store::LanguageId> languages;  // defaults to en, fr, de, nl
  std::size_t semantic_dim = 8;
  std::size_t embed_dim = 32;
  std::size_t train = 1000;  // sentences per language
  std::size_t dev = 200;
  std::size_t test = 200;
  double offset_scale = 8.0;
  double noise = 0.02;
  // When positive, sentences come in counterfactual pairs that differ only
  // in semantic coordinate 0, set to +bias_strength or -bias_strength.
  double bias_strength = 0.0;
  double bias_jitter = 0.1;
  std::uint64_t seed = 0;
};

struct LanguageView {
  store::LanguageId language;
  numcore::Matrix map;     // semantic_dim × embed_dim
  numcore::Matrix offset;  // 1 × embed_dim
  store::EmbeddingSet train;
  store::EmbeddingSet dev;
  store::EmbeddingSet test;
};

struct World {
  WorldConfig config;
  std::vector<LanguageView> languages;
  // Shared by every language (ids coincide across languages). Empty unless
  // a bias is planted; labels are "pos"/"neg" and groups tie each pair.
  std::vector<store::AttributeAnnotation> annotations;
  numcore::Matrix semantic_train;
  numcore::Matrix semantic_dev;
  numcore::Matrix semantic_test;

  const LanguageView& view(const store::LanguageId& language) const;
  std::vector<store::EmbeddingSet> split(store::Split split) const;
};

World make_world(WorldConfig config);

// Presets behind `xld synthetic`.
WorldConfig offset_langs_preset(std::uint64_t seed);
WorldConfig planted_bias_preset(std::uint64_t seed);

// Writes <lang>.<split>.xleb per language and split, plus annotations.tsv
// when annotations exist. Returns the paths written.
std::vector<std::filesystem::path> write_world(const World& world,
                                               const std::filesystem::path& dir);

}  // namespace xld::synth

#endif  // XLD_SYNTH_WORLDS_HPP_
