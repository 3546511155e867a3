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

#include "support/test_support.hpp"
#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"
#include "xld/store/workspace.hpp"

namespace xld::store {
namespace {

EmbeddingSet make_set(const char* lang, Split split, std::uint64_t seed) {
  EmbeddingSet s;
  s.language = LanguageId(lang);
  s.split = split;
  s.matrix = xld::testing::random_matrix(4, 3, seed);
  s.ids = {"a", "b", "c", "d"};
  return s;
}

TEST(Workspace, OpenRequiresManifest) {
  xld::testing::TempDir dir;
  EXPECT_THROW(Workspace::open(dir.path()), DataError);
  Workspace::open_or_create(dir.path());
  EXPECT_NO_THROW(Workspace::open(dir.path()));
}

TEST(Workspace, EntriesSurviveReopen) {
  xld::testing::TempDir dir;
  {
    auto ws = Workspace::open_or_create(dir.path());
    ws.add_embeddings(make_set("fr", Split::kTrain, 1));
    ws.add_embeddings(make_set("en", Split::kTrain, 2));
    ws.add_embeddings(make_set("en", Split::kDev, 3));
    const std::vector<AttributeAnnotation> ann = {{"a", "x", "g"}, {"b", "y", "g"}};
    ws.add_annotations(ann, LanguageId{});
    const std::vector<AttributeAnnotation> en_ann = {{"a", "only-en", "-"}};
    ws.add_annotations(en_ann, LanguageId("en"));
    ws.add_transform({"t", "transforms/t.xltf", "subspace", "original", BiasType::kRace,
                      LanguageId("en"), 3});
    ws.save();
  }
  const auto ws = Workspace::open(dir.path());
  const auto train = ws.embeddings(Split::kTrain);
  ASSERT_EQ(train.size(), 2u);
  EXPECT_EQ(train[0].language.code(), "en");  // entries are sorted
  EXPECT_EQ(train[1], make_set("fr", Split::kTrain, 1));
  EXPECT_EQ(ws.annotations(LanguageId("en")).front().label, "only-en");
  EXPECT_EQ(ws.annotations(LanguageId("fr")).size(), 2u);
  EXPECT_EQ(ws.transform("t").bias_type, BiasType::kRace);
  EXPECT_THROW(ws.transform("missing"), DataError);
  EXPECT_THROW(ws.embeddings(LanguageId("de"), Split::kTrain), DataError);
}

TEST(Workspace, ReAddingReplacesEntry) {
  xld::testing::TempDir dir;
  auto ws = Workspace::open_or_create(dir.path());
  ws.add_embeddings(make_set("en", Split::kTrain, 1));
  ws.add_embeddings(make_set("en", Split::kTrain, 7));
  EXPECT_EQ(ws.manifest().embeddings.size(), 1u);
  EXPECT_EQ(ws.embeddings(LanguageId("en"), Split::kTrain), make_set("en", Split::kTrain, 7));
}

TEST(WorkspaceManifest, EncodeDecodeIsStable) {
  WorkspaceManifest m;
  m.embeddings.push_back({LanguageId("en"), Split::kTest, "embeddings/en.test.xleb", 10, 4});
  m.pair_manifest = "pairs.tsv";
  m.scores.push_back({"scores/base.tsv", 120});
  m.attributes.push_back({LanguageId("de"), BiasType::kReligion, "attributes/de/religion.txt", 18});
  ModelEntry model;
  model.path = "model/autoencoder.xlae";
  model.input_dim = 4;
  model.latent_dim = 2;
  model.languages = {LanguageId("de"), LanguageId("en")};
  model.train_loss = {1.5, 0.25};
  model.dev_loss = {1.0, 0.5};
  model.best_epoch = 2;
  m.model = model;
  const std::string text = encode_manifest(m);
  EXPECT_EQ(encode_manifest(decode_manifest(text)), text);
  EXPECT_THROW(decode_manifest("{\"schema\": \"other\"}"), FormatError);
  EXPECT_THROW(decode_manifest("not json"), FormatError);
}

}  // namespace
}  // namespace xld::store
