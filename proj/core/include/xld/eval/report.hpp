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

#ifndef XLD_EVAL_REPORT_HPP_
#define XLD_EVAL_REPORT_HPP_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xld/debias/space.hpp"
#include "xld/eval/score.hpp"
#include "xld/store/types.hpp"

namespace xld::eval {

enum class Technique { kBase, kInlp, kSentDebias };
std::string_view to_string(Technique t) noexcept;

// Parsed condition label: "base", or "<technique>-<space>-<debias lang>"
// such as "inlp-original-en" or "sentdebias-latent-fr".
struct Condition {
  Technique technique = Technique::kBase;
  debias::SpaceTag space = debias::SpaceTag::kOriginal;
  store::LanguageId debias_language;

  std::string label() const;
  friend auto operator<=>(const Condition&, const Condition&) = default;
};

// Throws DataError for labels outside the grammar above.
Condition parse_condition(std::string_view label);

struct ReportCell {
  store::LanguageId eval_language;
  Condition condition;
  store::BiasType bias_type = store::BiasType::kGender;
  int sample_index = 0;
  BiasScore score;
};

// Mean over samples of one bias type.
struct TypeAverage {
  store::LanguageId eval_language;
  Condition condition;
  store::BiasType bias_type = store::BiasType::kGender;
  double mean_deviation = 0.0;
  double mean_percent_stereo = 0.0;
  std::size_t samples = 0;
  std::size_t significant_samples = 0;
};

// Mean over bias types of the per-type averages: one Table-2 cell.
struct ConditionAverage {
  store::LanguageId eval_language;
  Condition condition;
  double mean_deviation = 0.0;
  std::size_t bias_types = 0;
  bool complete = true;  // false when any constituent cell is missing
};

struct MissingCell {
  store::LanguageId eval_language;
  Condition condition;
  store::BiasType bias_type = store::BiasType::kGender;
  int sample_index = 0;
};

struct BiasReport {
  double alpha = kDefaultAlpha;
  // Threshold deviation at the most common per-cell n (12.5 for n = 40).
  double reference_deviation = 0.0;
  std::vector<store::LanguageId> eval_languages;
  std::vector<Condition> conditions;
  std::vector<ReportCell> cells;
  std::vector<TypeAverage> type_averages;
  std::vector<ConditionAverage> averages;
  std::vector<MissingCell> missing;

  const ConditionAverage* find(const store::LanguageId& eval_language,
                               const Condition& condition) const;
};

struct AggregateOptions {
  double alpha = kDefaultAlpha;
  // Expected grid axes. Empty means the union observed in the records.
  std::vector<store::BiasType> bias_types;
  std::vector<int> samples;
};

// Scores every (eval language, condition, bias type, sample) group and
// averages deviations over samples, then over bias types. Expected cells
// with no records are listed in `missing` and flag the averages they feed.
// Evaluation languages keep their order of first appearance.
BiasReport aggregate(std::span<const store::PreferenceRecord> records,
                     const AggregateOptions& options = {});

inline constexpr std::string_view kReportSchema = "xld.bias_report/1";

std::string report_to_json(const BiasReport& report);
// One table per debiasing language: rows are evaluation languages, columns
// Base, INLP-orig, INLP-latent, SD-orig, SD-latent. Incomplete cells carry
// a trailing '*', absent ones print '-'.
std::string render_table(const BiasReport& report);
// Long-format CSV of the averaged cells for bar charts.
std::string export_plot_data(const BiasReport& report);

}  // namespace xld::eval

#endif  // XLD_EVAL_REPORT_HPP_
