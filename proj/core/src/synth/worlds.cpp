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

#include "xld/synth/worlds.hpp"

#include <cmath>
#include <cstdio>

#include "xld/error.hpp"
#include "xld/numcore/rng.hpp"
#include "xld/store/embedding_io.hpp"

namespace xld::synth {
namespace {

using numcore::Matrix;
using numcore::Rng;

Matrix gaussian(std::size_t rows, std::size_t cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  for (float& v : m.values()) v = static_cast<float>(scale * rng.normal());
  return m;
}

std::string sentence_id(std::string_view split, std::size_t i, std::string_view suffix) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%05zu", i);
  return std::string(split) + "-" + buf + std::string(suffix);
}

struct SemanticSplit {
  Matrix s;
  std::vector<std::string> ids;
};

SemanticSplit draw_semantics(const WorldConfig& cfg, std::string_view split, std::size_t n,
                             Rng& rng, std::vector<store::AttributeAnnotation>& annotations) {
  SemanticSplit out;
  if (cfg.bias_strength <= 0.0) {
    out.s = gaussian(n, cfg.semantic_dim, 1.0, rng);
    for (std::size_t i = 0; i < n; ++i) out.ids.push_back(sentence_id(split, i, ""));
    return out;
  }
  // n counts sentences, so n/2 counterfactual pairs.
  const std::size_t pairs = n / 2;
  out.s = Matrix(2 * pairs, cfg.semantic_dim);
  for (std::size_t p = 0; p < pairs; ++p) {
    auto pos = out.s.row(2 * p);
    auto neg = out.s.row(2 * p + 1);
    for (std::size_t j = 1; j < cfg.semantic_dim; ++j) {
      pos[j] = neg[j] = static_cast<float>(rng.normal());
    }
    pos[0] = static_cast<float>(cfg.bias_strength + cfg.bias_jitter * rng.normal());
    neg[0] = static_cast<float>(-cfg.bias_strength + cfg.bias_jitter * rng.normal());
    const std::string group = sentence_id(split, p, "");
    out.ids.push_back(group + "-pos");
    out.ids.push_back(group + "-neg");
    annotations.push_back({out.ids[2 * p], "pos", group});
    annotations.push_back({out.ids[2 * p + 1], "neg", group});
  }
  return out;
}

store::EmbeddingSet render(const SemanticSplit& sem, const LanguageView& view, store::Split split,
                           double noise, Rng& rng) {
  store::EmbeddingSet set;
  set.language = view.language;
  set.split = split;
  set.ids = sem.ids;
  set.matrix = numcore::matmul(sem.s, view.map);
  numcore::add_row_vector(set.matrix, view.offset);
  for (float& v : set.matrix.values()) v += static_cast<float>(noise * rng.normal());
  return set;
}

}  // namespace

const LanguageView& World::view(const store::LanguageId& language) const {
  for (const auto& v : languages) {
    if (v.language == language) return v;
  }
  throw DataError("synthetic world has no language '" + language.code() + "'");
}

std::vector<store::EmbeddingSet> World::split(store::Split split) const {
  std::vector<store::EmbeddingSet> out;
  for (const auto& v : languages) {
    switch (split) {
      case store::Split::kTrain: out.push_back(v.train); break;
      case store::Split::kDev: out.push_back(v.dev); break;
      default: out.push_back(v.test); break;
    }
  }
  return out;
}

World make_world(WorldConfig config) {
  if (config.languages.empty()) {
    for (const char* code : {"en", "fr", "de", "nl"}) config.languages.emplace_back(code);
  }
  if (config.semantic_dim == 0 || config.embed_dim < config.semantic_dim) {
    throw ParameterError("synthetic world needs 0 < semantic_dim <= embed_dim");
  }
  const std::size_t min_split = config.bias_strength > 0.0 ? 2 : 1;
  if (config.train < min_split || config.dev < min_split || config.test < min_split) {
    throw ParameterError("synthetic splits are too small");
  }
  Rng root(config.seed);
  Rng semantic_rng = root.fork();
  World world;
  world.config = config;
  const SemanticSplit train = draw_semantics(config, "train", config.train, semantic_rng, world.annotations);
  const SemanticSplit dev = draw_semantics(config, "dev", config.dev, semantic_rng, world.annotations);
  const SemanticSplit test = draw_semantics(config, "test", config.test, semantic_rng, world.annotations);
  world.semantic_train = train.s;
  world.semantic_dev = dev.s;
  world.semantic_test = test.s;

  const double map_scale = 1.0 / std::sqrt(static_cast<double>(config.semantic_dim));
  for (const auto& lang : config.languages) {
    Rng lang_rng = root.fork();
    LanguageView view;
    view.language = lang;
    view.map = gaussian(config.semantic_dim, config.embed_dim, map_scale, lang_rng);
    view.offset = gaussian(1, config.embed_dim, config.offset_scale, lang_rng);
    view.train = render(train, view, store::Split::kTrain, config.noise, lang_rng);
    view.dev = render(dev, view, store::Split::kDev, config.noise, lang_rng);
    view.test = render(test, view, store::Split::kTest, config.noise, lang_rng);
    world.languages.push_back(std::move(view));
  }
  return world;
}

WorldConfig offset_langs_preset(std::uint64_t seed) {
  WorldConfig cfg;
  cfg.seed = seed;
  return cfg;
}

WorldConfig planted_bias_preset(std::uint64_t seed) {
  WorldConfig cfg;
  cfg.seed = seed;
  cfg.bias_strength = 1.5;
  return cfg;
}

std::vector<std::filesystem::path> write_world(const World& world,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& v : world.languages) {
    for (const auto* set : {&v.train, &v.dev, &v.test}) {
      auto path = dir / (v.language.code() + "." + std::string(store::to_string(set->split)) + ".xleb");
      store::write_embeddings(*set, path);
      written.push_back(std::move(path));
    }
  }
  if (!world.annotations.empty()) {
    auto path = dir / "annotations.tsv";
    store::write_annotations(world.annotations, path);
    written.push_back(std::move(path));
  }
  return written;
}

}  // namespace xld::synth
