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

#include "xld/eval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "xld/error.hpp"

namespace xld::eval {
namespace {

using store::BiasType;
using store::LanguageId;

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string space_label(const Condition& c) {
  return c.technique == Technique::kBase ? "none" : std::string(debias::to_string(c.space));
}

}  // namespace

std::string_view to_string(Technique t) noexcept {
  switch (t) {
    case Technique::kBase: return "base";
    case Technique::kInlp: return "inlp";
    case Technique::kSentDebias: return "sentdebias";
  }
  return "base";
}

std::string Condition::label() const {
  if (technique == Technique::kBase) return "base";
  return std::string(to_string(technique)) + "-" + std::string(debias::to_string(space)) + "-" +
         debias_language.code();
}

Condition parse_condition(std::string_view label) {
  if (label == "base") return {};
  const auto fail = [&]() -> Condition {
    throw DataError("unrecognised condition '" + std::string(label) +
                    "'; expected 'base' or '<inlp|sentdebias>-<original|latent>-<lang>'");
  };
  const auto first = label.find('-');
  const auto second = first == std::string_view::npos ? first : label.find('-', first + 1);
  if (second == std::string_view::npos) return fail();
  const auto tech = label.substr(0, first);
  const auto space = debias::parse_space_tag(label.substr(first + 1, second - first - 1));
  const auto lang = label.substr(second + 1);
  Condition c;
  if (tech == "inlp") {
    c.technique = Technique::kInlp;
  } else if (tech == "sentdebias") {
    c.technique = Technique::kSentDebias;
  } else {
    return fail();
  }
  if (!space || !LanguageId::is_valid(lang)) return fail();
  c.space = *space;
  c.debias_language = LanguageId(std::string(lang));
  return c;
}

const ConditionAverage* BiasReport::find(const LanguageId& eval_language,
                                         const Condition& condition) const {
  for (const auto& a : averages) {
    if (a.eval_language == eval_language && a.condition == condition) return &a;
  }
  return nullptr;
}

BiasReport aggregate(std::span<const store::PreferenceRecord> records,
                     const AggregateOptions& options) {
  if (records.empty()) throw DataError("no score records to aggregate");
  using Key = std::tuple<LanguageId, Condition, BiasType, int>;
  std::map<Key, std::vector<store::PreferenceRecord>> groups;
  // Rows follow the order in which languages first appear in the records.
  std::vector<LanguageId> langs;
  std::set<Condition> conditions;
  std::set<BiasType> types(options.bias_types.begin(), options.bias_types.end());
  std::set<int> samples(options.samples.begin(), options.samples.end());
  const bool infer_types = types.empty();
  const bool infer_samples = samples.empty();
  for (const auto& r : records) {
    const Condition c = parse_condition(r.condition);
    groups[{r.language, c, r.bias_type, r.sample_index}].push_back(r);
    if (std::find(langs.begin(), langs.end(), r.language) == langs.end()) {
      langs.push_back(r.language);
    }
    conditions.insert(c);
    if (infer_types) types.insert(r.bias_type);
    if (infer_samples) samples.insert(r.sample_index);
  }

  BiasReport report;
  report.alpha = options.alpha;
  report.eval_languages = langs;
  report.conditions.assign(conditions.begin(), conditions.end());

  std::map<std::size_t, std::size_t> n_frequency;
  for (const auto& lang : langs) {
    for (const auto& cond : conditions) {
      ConditionAverage avg{lang, cond, 0.0, 0, true};
      for (const BiasType type : types) {
        TypeAverage ta{lang, cond, type, 0.0, 0.0, 0, 0};
        for (const int sample : samples) {
          const auto it = groups.find({lang, cond, type, sample});
          if (it == groups.end()) {
            report.missing.push_back({lang, cond, type, sample});
            avg.complete = false;
            continue;
          }
          const BiasScore s = score(it->second, options.alpha);
          report.cells.push_back({lang, cond, type, sample, s});
          ++n_frequency[s.n];
          ta.mean_deviation += s.deviation;
          ta.mean_percent_stereo += s.percent_stereo;
          ta.significant_samples += s.significant ? 1 : 0;
          ++ta.samples;
        }
        if (ta.samples == 0) continue;
        ta.mean_deviation /= static_cast<double>(ta.samples);
        ta.mean_percent_stereo /= static_cast<double>(ta.samples);
        avg.mean_deviation += ta.mean_deviation;
        ++avg.bias_types;
        report.type_averages.push_back(ta);
      }
      if (avg.bias_types == 0) continue;
      avg.mean_deviation /= static_cast<double>(avg.bias_types);
      report.averages.push_back(avg);
    }
  }
  // Records outside the expected axes would otherwise vanish silently.
  for (const auto& [key, group] : groups) {
    if (!types.contains(std::get<2>(key)) || !samples.contains(std::get<3>(key))) {
      throw DataError("record '" + group.front().pair_id +
                      "' lies outside the expected bias types or samples");
    }
  }
  const auto modal = std::max_element(
      n_frequency.begin(), n_frequency.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  report.reference_deviation = threshold(modal->first, options.alpha).threshold_deviation;
  return report;
}

std::string report_to_json(const BiasReport& report) {
  using nlohmann::json;
  const auto cond_json = [](const Condition& c) {
    return json{{"label", c.label()},
                {"technique", std::string(to_string(c.technique))},
                {"space", space_label(c)},
                {"debias_language", c.debias_language.code()}};
  };
  json j;
  j["schema"] = std::string(kReportSchema);
  j["alpha"] = report.alpha;
  j["reference_deviation"] = report.reference_deviation;
  j["eval_languages"] = json::array();
  for (const auto& l : report.eval_languages) j["eval_languages"].push_back(l.code());
  j["conditions"] = json::array();
  for (const auto& c : report.conditions) j["conditions"].push_back(cond_json(c));
  j["cells"] = json::array();
  for (const auto& c : report.cells) {
    j["cells"].push_back({{"eval_language", c.eval_language.code()},
                          {"condition", c.condition.label()},
                          {"bias_type", std::string(store::to_string(c.bias_type))},
                          {"sample", c.sample_index},
                          {"n", c.score.n},
                          {"stereo_count", c.score.stereo_count},
                          {"ties", c.score.ties},
                          {"percent_stereo", c.score.percent_stereo},
                          {"deviation", c.score.deviation},
                          {"significant", c.score.significant}});
  }
  j["type_averages"] = json::array();
  for (const auto& t : report.type_averages) {
    j["type_averages"].push_back({{"eval_language", t.eval_language.code()},
                                  {"condition", t.condition.label()},
                                  {"bias_type", std::string(store::to_string(t.bias_type))},
                                  {"mean_deviation", t.mean_deviation},
                                  {"mean_percent_stereo", t.mean_percent_stereo},
                                  {"samples", t.samples},
                                  {"significant_samples", t.significant_samples}});
  }
  j["averages"] = json::array();
  for (const auto& a : report.averages) {
    json entry = cond_json(a.condition);
    entry["condition"] = entry["label"];
    entry.erase("label");
    entry["eval_language"] = a.eval_language.code();
    entry["mean_deviation"] = a.mean_deviation;
    entry["bias_types"] = a.bias_types;
    entry["complete"] = a.complete;
    j["averages"].push_back(std::move(entry));
  }
  j["missing"] = json::array();
  for (const auto& m : report.missing) {
    j["missing"].push_back({{"eval_language", m.eval_language.code()},
                            {"condition", m.condition.label()},
                            {"bias_type", std::string(store::to_string(m.bias_type))},
                            {"sample", m.sample_index}});
  }
  return j.dump(2) + "\n";
}

std::string render_table(const BiasReport& report) {
  std::set<LanguageId> debias_langs;
  for (const auto& c : report.conditions) {
    if (c.technique != Technique::kBase) debias_langs.insert(c.debias_language);
  }
  if (debias_langs.empty()) debias_langs.insert(LanguageId{});

  const std::vector<std::string> headers = {"Eval Lang", "Base",    "INLP-orig",
                                            "INLP-latent", "SD-orig", "SD-latent"};
  const auto cell_text = [&](const LanguageId& eval, const Condition& cond) -> std::string {
    const ConditionAverage* a = report.find(eval, cond);
    if (a == nullptr) return "-";
    return fixed2(a->mean_deviation) + (a->complete ? "" : "*");
  };

  std::string out;
  bool any_incomplete = false;
  for (const auto& dl : debias_langs) {
    std::vector<std::vector<std::string>> rows{headers};
    for (const auto& eval : report.eval_languages) {
      std::vector<std::string> row{eval.code(), cell_text(eval, Condition{})};
      for (const auto tech : {Technique::kInlp, Technique::kSentDebias}) {
        for (const auto space : {debias::SpaceTag::kOriginal, debias::SpaceTag::kLatent}) {
          row.push_back(cell_text(eval, Condition{tech, space, dl}));
        }
      }
      for (const auto& text : row) any_incomplete |= text.ends_with('*');
      rows.push_back(std::move(row));
    }
    std::vector<std::size_t> widths(headers.size(), 0);
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    out += "Debiasing language: " + (dl.empty() ? std::string("-") : dl.code()) + "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::string line;
      for (std::size_t i = 0; i < rows[r].size(); ++i) {
        line += "| " + rows[r][i] + std::string(widths[i] - rows[r][i].size(), ' ') + " ";
      }
      out += line + "|\n";
      if (r == 0) {
        std::string rule;
        for (const auto w : widths) rule += "|" + std::string(w + 2, '-');
        out += rule + "|\n";
      }
    }
    out += "\n";
  }
  out += "Average deviation across bias types; significance threshold " +
         fixed2(report.reference_deviation) + " at alpha " + shortest(report.alpha) + ".\n";
  if (any_incomplete) out += "* averaged over incomplete cells; see missing list.\n";
  if (!report.missing.empty()) {
    out += "Missing cells: " + std::to_string(report.missing.size()) + "\n";
    for (const auto& m : report.missing) {
      out += "  " + m.eval_language.code() + " " + m.condition.label() + " " +
             std::string(store::to_string(m.bias_type)) + " sample " +
             std::to_string(m.sample_index) + "\n";
    }
  }
  return out;
}

std::string export_plot_data(const BiasReport& report) {
  std::string out =
      "eval_lang,debias_lang,technique,space,deviation,significant,reference_deviation\n";
  for (const auto& a : report.averages) {
    out += a.eval_language.code() + "," + a.condition.debias_language.code() + "," +
           std::string(to_string(a.condition.technique)) + "," + space_label(a.condition) + "," +
           shortest(a.mean_deviation) + "," +
           (a.mean_deviation > report.reference_deviation ? "true" : "false") + "," +
           shortest(report.reference_deviation) + "\n";
  }
  return out;
}

}  // namespace xld::eval
