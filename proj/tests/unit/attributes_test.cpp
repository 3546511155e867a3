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

#include <algorithm>

#include "support/test_support.hpp"
#include "xld/error.hpp"
#include "xld/store/attributes.hpp"

namespace xld::store {
namespace {

struct Expected {
  const char* lang;
  BiasType type;
  std::size_t entries;
  const char* first;
};

// Entry counts of the published per-language attribute lists.
constexpr Expected kBundled[] = {
    {"en", BiasType::kGender, 114, "actor"},      {"en", BiasType::kRace, 18, "black"},
    {"en", BiasType::kReligion, 18, "jewish"},    {"fr", BiasType::kGender, 178, "acteur"},
    {"fr", BiasType::kRace, 24, "noir"},          {"fr", BiasType::kReligion, 18, "juif"},
    {"de", BiasType::kGender, 108, "schauspieler"}, {"de", BiasType::kRace, 11, "dunkelhäutig"},
    {"de", BiasType::kReligion, 18, "jüdisch"},   {"nl", BiasType::kGender, 162, "acteur"},
    {"nl", BiasType::kRace, 18, "afrikaans"},     {"nl", BiasType::kReligion, 18, "joods"},
};

TEST(BundledAttributes, CountsAndFirstEntries) {
  for (const auto& e : kBundled) {
    const auto list = bundled_attribute_list(LanguageId(e.lang), e.type);
    EXPECT_EQ(list.entries.size(), e.entries) << e.lang << " " << to_string(e.type);
    EXPECT_EQ(list.entries.front(), e.first);
    list.validate();
  }
  EXPECT_EQ(bundled_languages().size(), 4u);
}

TEST(BundledAttributes, GenderListsPairAdjacentEntries) {
  for (const char* code : {"en", "fr", "de", "nl"}) {
    const auto list = bundled_attribute_list(LanguageId(code), BiasType::kGender);
    ASSERT_TRUE(list.paired());
    EXPECT_EQ(list.pairing.size(), list.entries.size() / 2);
    EXPECT_EQ(list.pairing[0], (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_FALSE(bundled_attribute_list(LanguageId(code), BiasType::kRace).paired());
  }
  const auto en = bundled_attribute_list(LanguageId("en"), BiasType::kGender);
  const auto he = std::find(en.entries.begin(), en.entries.end(), "he") - en.entries.begin();
  ASSERT_LT(static_cast<std::size_t>(he), en.entries.size());
  EXPECT_EQ(en.entries[he + 1], "she");
}

TEST(BundledAttributes, UnknownLanguageIsDataError) {
  EXPECT_THROW(bundled_attribute_list(LanguageId("it"), BiasType::kGender), DataError);
}

TEST(AttributeFiles, ParseAndRoundTrip) {
  const auto list = parse_attribute_list(LanguageId("en"), BiasType::kGender,
                                         "king\nqueen\n\nprince\nprincess\n", "0 1\n2 3\n");
  EXPECT_EQ(list.entries, (std::vector<std::string>{"king", "queen", "prince", "princess"}));
  EXPECT_EQ(list.pairing.size(), 2u);
  xld::testing::TempDir dir;
  write_attribute_list(list, dir / "g.txt", dir / "g.pairs");
  const auto back = read_attribute_list(LanguageId("en"), BiasType::kGender, dir / "g.txt",
                                        dir / "g.pairs");
  EXPECT_EQ(back.entries, list.entries);
  EXPECT_EQ(back.pairing, list.pairing);
}

TEST(AttributeFiles, RejectsBadPairingAndEmptyLists) {
  EXPECT_THROW(parse_attribute_list(LanguageId("en"), BiasType::kGender, "a\nb\n", "0 5\n"),
               Error);
  EXPECT_THROW(parse_attribute_list(LanguageId("en"), BiasType::kGender, "\n\n"), DataError);
}

}  // namespace
}  // namespace xld::store
