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

#include <map>

#include "support/test_support.hpp"
#include "xld/error.hpp"
#include "xld/store/annotations_io.hpp"
#include "xld/store/scores_io.hpp"

namespace xld::store {
namespace {

const std::string kHeader(kScoreHeader);

TEST(ScoresIo, ParsesDocumentedRow) {
  const auto records = decode_scores(kHeader + "\np1\ten\tgender\t0\t-12.5\t-13.1\tbase\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].pair_id, "p1");
  EXPECT_EQ(records[0].language.code(), "en");
  EXPECT_EQ(records[0].bias_type, BiasType::kGender);
  EXPECT_EQ(records[0].sample_index, 0);
  EXPECT_DOUBLE_EQ(records[0].logp_stereo, -12.5);
  EXPECT_DOUBLE_EQ(records[0].logp_anti, -13.1);
  EXPECT_EQ(records[0].condition, "base");
}

TEST(ScoresIo, PositiveLogProbabilityIsRejectedWithLine) {
  try {
    decode_scores(kHeader + "\np1\ten\tgender\t0\t-1\t-2\tbase\np2\ten\tgender\t0\t3.2\t-2\tbase\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("log-probability must be <= 0"), std::string::npos);
  }
}

TEST(ScoresIo, RowLevelErrors) {
  EXPECT_THROW(decode_scores(kHeader + "\np1\ten\tage\t0\t-1\t-2\tbase\n"), ParseError);
  EXPECT_THROW(decode_scores(kHeader + "\np1\ten\tgender\t0\t-1\tbase\n"), ParseError);
  EXPECT_THROW(decode_scores(kHeader + "\np1\ten\tgender\t0\tnan\t-2\tbase\n"), ParseError);
  EXPECT_THROW(decode_scores("wrong\theader\n"), ParseError);
}

TEST(ScoresIo, HundredTwentyRowFixture) {
  // 3 bias types × 40 pairs, written out by hand rather than by the encoder.
  std::string text = kHeader + "\n";
  for (const char* type : {"gender", "race", "religion"}) {
    for (int i = 0; i < 40; ++i) {
      text += std::string(type) + "-" + std::to_string(i) + "\tfr\t" + type + "\t" +
              std::to_string(i % 3) + "\t-" + std::to_string(10 + i) + ".25\t-" +
              std::to_string(11 + i) + "\tbase\n";
    }
  }
  const auto records = decode_scores(text);
  ASSERT_EQ(records.size(), 120u);
  std::map<BiasType, int> counts;
  for (const auto& r : records) ++counts[r.bias_type];
  EXPECT_EQ(counts[BiasType::kGender], 40);
  EXPECT_EQ(counts[BiasType::kRace], 40);
  EXPECT_EQ(counts[BiasType::kReligion], 40);
  EXPECT_EQ(decode_scores(encode_scores(records)), records);
}

TEST(ScoresIo, RoundTripPreservesDoublesExactly) {
  std::vector<PreferenceRecord> records = {
      {"x", LanguageId("de"), BiasType::kRace, 2, -0.1 - 0.2, -1e-300, "inlp-latent-nl"}};
  xld::testing::TempDir dir;
  write_scores(records, dir / "s.tsv");
  EXPECT_EQ(read_scores(dir / "s.tsv"), records);
}

TEST(EvalPairsIo, RoundTrip) {
  const std::vector<EvalPair> pairs = {
      {"p1", LanguageId("en"), BiasType::kReligion, 1, "Stereo sentence.", "Anti sentence."}};
  EXPECT_EQ(decode_eval_pairs(encode_eval_pairs(pairs)), pairs);
  EXPECT_THROW(decode_eval_pairs(std::string(kEvalPairHeader) + "\np1\ten\treligion\tone\ta\tb\n"),
               ParseError);
}

TEST(AnnotationsIo, RoundTripAndValidation) {
  const std::vector<AttributeAnnotation> rows = {{"s1", "male", "g1"}, {"s2", "female", "g1"},
                                                 {"s3", "jewish", std::string(kNoGroup)}};
  const std::string text = encode_annotations(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), "id\tlabel\tgroup");
  EXPECT_EQ(decode_annotations(text), rows);
  EXPECT_THROW(decode_annotations("id\tlabel\tgroup\ns1\tmale\n"), ParseError);
  EXPECT_THROW(decode_annotations("id\tlabel\tgroup\ns1\tmale\tg\ns1\tfemale\tg\n"), ParseError);
}

}  // namespace
}  // namespace xld::store
