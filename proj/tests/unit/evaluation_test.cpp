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
#include <cmath>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "support/fixtures.hpp"
#include "xld/error.hpp"
#include "xld/eval/report.hpp"
#include "xld/eval/score.hpp"
#include "xld/eval/threshold.hpp"
#include "xld/numcore/rng.hpp"

namespace xld::eval {
namespace {

using store::BiasType;
using store::LanguageId;
using store::PreferenceRecord;
using xld::testing::preference_records;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> table_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string part;
  std::getline(in, part, '|');
  while (std::getline(in, part, '|')) {
    const auto b = part.find_first_not_of(' ');
    const auto e = part.find_last_not_of(' ');
    cells.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
  }
  return cells;
}

TEST(Threshold, FortyItemsAtFivePercent) {
  const Threshold t = threshold(40);
  EXPECT_DOUBLE_EQ(t.z, 1.645);
  EXPECT_NEAR(t.x, 20 + 1.645 * std::sqrt(10.0), 1e-12);
  EXPECT_EQ(t.critical_count, 25u);
  EXPECT_DOUBLE_EQ(t.threshold_percent, 62.5);
  EXPECT_DOUBLE_EQ(t.threshold_deviation, 12.5);
}

TEST(Threshold, HundredItemsFollowsTheFormula) {
  const Threshold t = threshold(100);
  EXPECT_NEAR(t.x, 58.225, 1e-9);
  EXPECT_EQ(t.critical_count, 58u);
  EXPECT_DOUBLE_EQ(t.threshold_percent, 58.0);
}

TEST(Threshold, ZValuesAreRoundedQuantiles) {
  EXPECT_DOUBLE_EQ(z_value(0.05), 1.645);
  EXPECT_DOUBLE_EQ(z_value(0.01), 2.326);
  EXPECT_DOUBLE_EQ(z_value(0.025), 1.96);
  EXPECT_THROW(z_value(0.0), ParameterError);
  EXPECT_THROW(z_value(0.5), ParameterError);
  EXPECT_THROW(z_value(-1), ParameterError);
  EXPECT_THROW(threshold(0), ParameterError);
}

TEST(Threshold, MonotoneInAlphaAndConvergesToHalf) {
  for (std::size_t n : {10u, 40u, 100u, 1000u}) {
    double previous = 101;
    for (double alpha = 0.001; alpha < 0.5; alpha += 0.01) {
      const double p = threshold(n, alpha).threshold_percent;
      EXPECT_LE(p, previous + 1e-12) << n << " " << alpha;
      EXPECT_GE(p, 50.0 - 100.0 / static_cast<double>(n));
      previous = p;
    }
  }
  EXPECT_NEAR(threshold(40, 0.4999).threshold_percent, 50.0, 1e-12);
  double previous_gap = 1e9;
  for (std::size_t n = 100; n <= 1'000'000; n *= 10) {
    const double gap = threshold(n).threshold_percent - 50.0;
    EXPECT_NEAR(gap, 164.5 / (2 * std::sqrt(static_cast<double>(n))), 100.0 / n + 1e-12);
    EXPECT_LT(gap, previous_gap);
    previous_gap = gap;
  }
}

TEST(Score, CountsStrictPreferences) {
  auto all = preference_records(40, 40, "en", BiasType::kGender, 0, "base");
  EXPECT_DOUBLE_EQ(score(all).percent_stereo, 100.0);
  EXPECT_DOUBLE_EQ(score(all).deviation, 50.0);
  EXPECT_TRUE(score(all).significant);
  auto half = preference_records(20, 40, "en", BiasType::kGender, 0, "base");
  EXPECT_DOUBLE_EQ(score(half).percent_stereo, 50.0);
  EXPECT_DOUBLE_EQ(score(half).deviation, 0.0);
  // Exactly at the critical count is not significant; one more is.
  EXPECT_FALSE(score(preference_records(25, 40, "en", BiasType::kGender, 0, "base")).significant);
  EXPECT_TRUE(score(preference_records(26, 40, "en", BiasType::kGender, 0, "base")).significant);
}

TEST(Score, TiesAreNotStereotypical) {
  auto recs = preference_records(30, 40, "en", BiasType::kRace, 1, "base");
  for (int i = 0; i < 4; ++i) recs[i].logp_anti = recs[i].logp_stereo;
  const BiasScore s = score(recs);
  EXPECT_EQ(s.stereo_count, 26u);
  EXPECT_EQ(s.ties, 4u);
  EXPECT_EQ(s, score_from_counts(26, 40, 4));
}

TEST(Score, RejectsEmptyAndMixedGroups) {
  EXPECT_THROW(score({}), DataError);
  auto recs = preference_records(3, 5, "en", BiasType::kRace, 1, "base");
  for (auto mutate : std::vector<std::function<void(PreferenceRecord&)>>{
           [](PreferenceRecord& r) { r.language = LanguageId("fr"); },
           [](PreferenceRecord& r) { r.bias_type = BiasType::kGender; },
           [](PreferenceRecord& r) { r.sample_index = 2; },
           [](PreferenceRecord& r) { r.condition = "inlp-latent-en"; }}) {
    auto mixed = recs;
    mutate(mixed.back());
    EXPECT_THROW(score(mixed), DataError);
  }
  EXPECT_THROW(score_from_counts(5, 4), DataError);
}

TEST(Score, PropertiesOverRandomRecords) {
  numcore::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(80);
    std::vector<PreferenceRecord> recs;
    std::size_t stereo = 0;
    for (std::size_t i = 0; i < n; ++i) {
      PreferenceRecord r;
      r.pair_id = std::to_string(i);
      r.language = LanguageId("de");
      r.logp_stereo = std::round(rng.normal() * 4) / 4;
      r.logp_anti = std::round(rng.normal() * 4) / 4;
      r.condition = "base";
      stereo += r.logp_stereo > r.logp_anti ? 1 : 0;
      recs.push_back(r);
    }
    const BiasScore s = score(recs);
    EXPECT_NEAR(s.percent_stereo, 100.0 * stereo / n, 1e-12);
    EXPECT_GE(s.deviation, 0.0);
    EXPECT_LE(s.deviation, 50.0);
    EXPECT_EQ(s.deviation == 50.0, stereo == 0 || stereo == n);
    EXPECT_EQ(s.significant, s.percent_stereo > threshold(n).threshold_percent);
    // Condition labels never enter the arithmetic.
    for (auto& r : recs) r.condition = "sentdebias-latent-nl";
    EXPECT_EQ(score(recs), s);
  }
}

TEST(Aggregate, GridFixtureAveragesTo1417) {
  const auto records = xld::testing::bias_grid_fixture();
  const BiasReport report = aggregate(records);
  EXPECT_DOUBLE_EQ(report.reference_deviation, 12.5);
  EXPECT_TRUE(report.missing.empty());
  const ConditionAverage* en_base = report.find(LanguageId("en"), Condition{});
  ASSERT_NE(en_base, nullptr);
  EXPECT_NEAR(en_base->mean_deviation, (15.0 + 15.0 + 12.5) / 3.0, 1e-12);
  EXPECT_NEAR(en_base->mean_deviation, 14.17, 0.01);
  EXPECT_EQ(en_base->bias_types, 3u);
  EXPECT_TRUE(en_base->complete);
  EXPECT_EQ(report.eval_languages,
            (std::vector<LanguageId>{LanguageId("en"), LanguageId("fr"), LanguageId("de"),
                                     LanguageId("nl")}));
}

TEST(Aggregate, PerTypeDeviationsAverage) {
  // Deviations 10, 15 and 17.5 from 24, 26 and 27 of 40 stereotypical.
  std::vector<PreferenceRecord> recs;
  const std::pair<BiasType, std::size_t> cells[] = {
      {BiasType::kGender, 24}, {BiasType::kRace, 26}, {BiasType::kReligion, 27}};
  for (const auto& [type, stereo] : cells) {
    auto part = preference_records(stereo, 40, "en", type, 0, "base");
    recs.insert(recs.end(), part.begin(), part.end());
  }
  const BiasReport report = aggregate(recs);
  EXPECT_NEAR(report.find(LanguageId("en"), Condition{})->mean_deviation, 42.5 / 3, 1e-12);
}

TEST(Aggregate, SingleCellEqualsItsScore) {
  const auto recs = preference_records(31, 40, "fr", BiasType::kRace, 2, "inlp-latent-en");
  const BiasReport report = aggregate(recs);
  ASSERT_EQ(report.cells.size(), 1u);
  ASSERT_EQ(report.averages.size(), 1u);
  EXPECT_EQ(report.cells[0].score, score(recs));
  EXPECT_DOUBLE_EQ(report.averages[0].mean_deviation, score(recs).deviation);
}

TEST(Aggregate, AveragesRecomputeFromCells) {
  const BiasReport report = aggregate(xld::testing::bias_grid_fixture());
  for (const auto& ta : report.type_averages) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& c : report.cells) {
      if (c.eval_language == ta.eval_language && c.condition == ta.condition &&
          c.bias_type == ta.bias_type) {
        sum += c.score.deviation;
        ++count;
      }
    }
    ASSERT_EQ(count, 3u);
    EXPECT_NEAR(ta.mean_deviation, sum / count, 1e-12);
  }
  for (const auto& a : report.averages) {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& ta : report.type_averages) {
      if (ta.eval_language == a.eval_language && ta.condition == a.condition) {
        sum += ta.mean_deviation;
        ++count;
      }
    }
    EXPECT_EQ(count, a.bias_types);
    EXPECT_NEAR(a.mean_deviation, sum / count, 1e-12);
  }
}

TEST(Aggregate, MissingCellsAreListedAndFlagged) {
  auto recs = xld::testing::bias_grid_fixture();
  std::erase_if(recs, [](const PreferenceRecord& r) {
    return r.language.code() == "de" && r.condition == "inlp-latent-en" &&
           r.bias_type == BiasType::kReligion && r.sample_index == 1;
  });
  const BiasReport report = aggregate(recs);
  ASSERT_EQ(report.missing.size(), 1u);
  EXPECT_EQ(report.missing[0].eval_language, LanguageId("de"));
  EXPECT_EQ(report.missing[0].sample_index, 1);
  const Condition inlp_latent = parse_condition("inlp-latent-en");
  EXPECT_FALSE(report.find(LanguageId("de"), inlp_latent)->complete);
  EXPECT_TRUE(report.find(LanguageId("fr"), inlp_latent)->complete);
  const std::string table = render_table(report);
  EXPECT_NE(table.find("Missing cells: 1"), std::string::npos);
  EXPECT_NE(table.find("de inlp-latent-en religion sample 1"), std::string::npos);
  EXPECT_NE(table.find("*"), std::string::npos);

  // Records outside the expected axes are an error, expected absent types are missing.
  AggregateOptions opts;
  opts.bias_types = {BiasType::kGender};
  EXPECT_THROW(aggregate(recs, opts), DataError);
  opts.bias_types = {BiasType::kGender, BiasType::kRace, BiasType::kReligion};
  opts.samples = {0, 1, 2, 3};
  EXPECT_EQ(aggregate(recs, opts).missing.size(), 1u + 4 * 5 * 3);
}

TEST(Aggregate, ConditionGrammar) {
  EXPECT_EQ(parse_condition("base"), Condition{});
  const Condition c = parse_condition("sentdebias-latent-fr");
  EXPECT_EQ(c.technique, Technique::kSentDebias);
  EXPECT_EQ(c.space, debias::SpaceTag::kLatent);
  EXPECT_EQ(c.debias_language, LanguageId("fr"));
  EXPECT_EQ(c.label(), "sentdebias-latent-fr");
  for (const char* bad : {"", "Base", "inlp", "inlp-latent", "cda-original-en",
                          "inlp-middle-en", "inlp-latent-EN", "inlp-latent-en-x"}) {
    EXPECT_THROW(parse_condition(bad), DataError) << bad;
  }
}

TEST(Render, TableHasOneRowPerLanguage) {
  const BiasReport report = aggregate(xld::testing::bias_grid_fixture());
  const auto lines = lines_of(render_table(report));
  ASSERT_GE(lines.size(), 7u);
  EXPECT_EQ(lines[0], "Debiasing language: en");
  EXPECT_EQ(table_cells(lines[1]), (std::vector<std::string>{"Eval Lang", "Base", "INLP-orig",
                                                             "INLP-latent", "SD-orig",
                                                             "SD-latent"}));
  const char* expected_rows[] = {"en", "fr", "de", "nl"};
  for (int r = 0; r < 4; ++r) {
    const auto cells = table_cells(lines[3 + r]);
    ASSERT_EQ(cells.size(), 6u);
    EXPECT_EQ(cells[0], expected_rows[r]);
    for (int c = 1; c < 6; ++c) {
      EXPECT_NE(cells[c], "-");
      EXPECT_EQ(cells[c].find('*'), std::string::npos);
    }
    // Every row is the same width, so the pipes line up.
    EXPECT_EQ(lines[3 + r].size(), lines[1].size());
  }
  EXPECT_EQ(table_cells(lines[3])[1], "14.17");
  EXPECT_NE(render_table(report).find("threshold 12.50"), std::string::npos);
}

TEST(Render, OneTablePerDebiasLanguage) {
  auto recs = xld::testing::bias_grid_fixture();
  auto fr = preference_records(30, 40, "en", BiasType::kGender, 0, "inlp-latent-fr");
  recs.insert(recs.end(), fr.begin(), fr.end());
  AggregateOptions opts;
  opts.samples = {0};
  std::erase_if(recs, [](const PreferenceRecord& r) { return r.sample_index != 0; });
  const std::string table = render_table(aggregate(recs, opts));
  EXPECT_NE(table.find("Debiasing language: en"), std::string::npos);
  EXPECT_NE(table.find("Debiasing language: fr"), std::string::npos);
  // The fr table only has the INLP-latent cell for en; the rest print "-".
  const auto lines = lines_of(table.substr(table.find("Debiasing language: fr")));
  const auto en_row = table_cells(lines[3]);
  EXPECT_EQ(en_row[0], "en");
  EXPECT_EQ(en_row[2], "-");
  EXPECT_NE(en_row[3], "-");
}

TEST(Export, JsonAndPlotCsv) {
  const BiasReport report = aggregate(xld::testing::bias_grid_fixture());
  const auto j = nlohmann::json::parse(report_to_json(report));
  EXPECT_EQ(j["schema"], "xld.bias_report/1");
  EXPECT_EQ(j["cells"].size(), 4u * 5 * 3 * 3);
  EXPECT_EQ(j["averages"].size(), 4u * 5);
  EXPECT_EQ(report_to_json(report), report_to_json(aggregate(xld::testing::bias_grid_fixture())));

  const auto lines = lines_of(export_plot_data(report));
  ASSERT_EQ(lines.size(), 1u + 4 * 5);
  EXPECT_EQ(lines[0], "eval_lang,debias_lang,technique,space,deviation,significant,reference_deviation");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    EXPECT_TRUE(lines[i].ends_with(",12.5")) << lines[i];
  }
  const auto base = std::find_if(lines.begin(), lines.end(),
                                 [](const std::string& l) { return l.starts_with("en,,base,none,"); });
  ASSERT_NE(base, lines.end());
  EXPECT_NE(base->find(",true,"), std::string::npos);
}

}  // namespace
}  // namespace xld::eval
