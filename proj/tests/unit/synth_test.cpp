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

#include <gtest/gtest.h>

#include <cmath>

#include "support/test_support.hpp"
#include "xld/diag/alignment.hpp"
#include "xld/error.hpp"
#include "xld/store/annotations_io.hpp"
#include "xld/store/embedding_io.hpp"
#include "xld/synth/worlds.hpp"

namespace xld::synth {
namespace {

using numcore::Matrix;
using store::LanguageId;
using store::Split;

WorldConfig small_config(std::uint64_t seed) {
  WorldConfig c = offset_langs_preset(seed);
  c.train = 60;
  c.dev = 20;
  c.test = 30;
  return c;
}

store::ParallelPairSet shared_ids(const store::EmbeddingSet& a, const store::EmbeddingSet& b) {
  store::ParallelPairSet p{a.language, b.language, {}};
  for (const auto& id : a.ids) p.pairs.emplace_back(id, id);
  return p;
}

TEST(World, ShapesAndSharedIds) {
  const World w = make_world(small_config(1));
  ASSERT_EQ(w.languages.size(), 4u);
  EXPECT_EQ(w.languages[0].language, LanguageId("en"));
  EXPECT_EQ(w.languages[3].language, LanguageId("nl"));
  EXPECT_EQ(w.semantic_train.rows(), 60u);
  EXPECT_EQ(w.semantic_train.cols(), w.config.semantic_dim);
  for (const auto& v : w.languages) {
    EXPECT_EQ(v.map.rows(), w.config.semantic_dim);
    EXPECT_EQ(v.map.cols(), w.config.embed_dim);
    EXPECT_EQ(v.train.matrix.rows(), 60u);
    EXPECT_EQ(v.dev.split, Split::kDev);
    EXPECT_EQ(v.test.ids, w.languages[0].test.ids);
    EXPECT_EQ(v.test.language, v.language);
  }
  EXPECT_TRUE(w.annotations.empty());
  EXPECT_EQ(w.split(Split::kTest).size(), 4u);
  EXPECT_THROW(w.view(LanguageId("ja")), DataError);
}

TEST(World, EmbeddingsFollowTheAffineModel) {
  const World w = make_world(small_config(2));
  for (const auto& v : w.languages) {
    Matrix expected = numcore::matmul(w.semantic_dev, v.map);
    numcore::add_row_vector(expected, v.offset);
    const double err = numcore::max_abs_diff(expected, v.dev.matrix);
    EXPECT_LT(err, 6 * w.config.noise);
    EXPECT_GT(err, 0.0);
  }
}

TEST(World, RawSpaceIsMisalignedButSemanticSpaceIsNot) {
  const World w = make_world(small_config(3));
  const auto& en = w.view(LanguageId("en")).test;
  const auto& fr = w.view(LanguageId("fr")).test;
  EXPECT_LT(diag::retrieval_accuracy(en, fr, shared_ids(en, fr)).accuracy, 0.2);

  // Undoing each language's affine map recovers aligned semantics.
  store::EmbeddingSet sem_en = en, sem_fr = fr;
  sem_en.matrix = w.semantic_test;
  sem_fr.matrix = w.semantic_test;
  EXPECT_DOUBLE_EQ(diag::retrieval_accuracy(sem_en, sem_fr, shared_ids(en, fr)).accuracy, 1.0);
}

TEST(World, SeedDeterminesEverything) {
  const World a = make_world(small_config(4));
  const World b = make_world(small_config(4));
  const World c = make_world(small_config(5));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a.languages[i].train, b.languages[i].train);
    EXPECT_NE(a.languages[i].train.matrix, c.languages[i].train.matrix);
  }
}

TEST(World, PlantedBiasPairsDifferOnlyInTheBiasCoordinate) {
  WorldConfig cfg = planted_bias_preset(6);
  cfg.train = 40;
  cfg.dev = 10;
  cfg.test = 10;
  const World w = make_world(cfg);
  const Matrix& s = w.semantic_train;
  ASSERT_EQ(s.rows(), 40u);
  ASSERT_EQ(w.annotations.size(), 60u);
  EXPECT_EQ(w.view(LanguageId("en")).train.ids[0], "train-00000-pos");
  EXPECT_EQ(w.view(LanguageId("en")).train.ids[1], "train-00000-neg");
  for (std::size_t p = 0; p < 20; ++p) {
    for (std::size_t j = 1; j < s.cols(); ++j) EXPECT_EQ(s(2 * p, j), s(2 * p + 1, j));
    EXPECT_GT(s(2 * p, 0), 0.0f);
    EXPECT_LT(s(2 * p + 1, 0), 0.0f);
    EXPECT_NEAR(s(2 * p, 0), cfg.bias_strength, 5 * cfg.bias_jitter);
  }
  const auto& first = w.annotations[0];
  EXPECT_EQ(first.id, "train-00000-pos");
  EXPECT_EQ(first.label, "pos");
  EXPECT_EQ(first.group, "train-00000");
  EXPECT_EQ(w.annotations[1].label, "neg");
  EXPECT_EQ(w.annotations[1].group, "train-00000");
}

TEST(World, WritesReadableFiles) {
  xld::testing::TempDir dir;
  WorldConfig cfg = planted_bias_preset(7);
  cfg.train = 8;
  cfg.dev = 4;
  cfg.test = 4;
  const World w = make_world(cfg);
  const auto paths = write_world(w, dir.path());
  EXPECT_EQ(paths.size(), 4u * 3 + 1);
  const auto back = store::read_embeddings(dir / "fr.dev.xleb");
  EXPECT_EQ(back, w.view(LanguageId("fr")).dev);
  EXPECT_EQ(store::read_annotations(dir / "annotations.tsv"), w.annotations);
}

TEST(World, RejectsInvalidConfigs) {
  WorldConfig c = small_config(8);
  c.semantic_dim = 0;
  EXPECT_THROW(make_world(c), ParameterError);
  c = small_config(8);
  c.semantic_dim = 40;
  EXPECT_THROW(make_world(c), ParameterError);
  c = small_config(8);
  c.bias_strength = 1.0;
  c.train = 1;
  EXPECT_THROW(make_world(c), ParameterError);
}

}  // namespace
}  // namespace xld::synth
