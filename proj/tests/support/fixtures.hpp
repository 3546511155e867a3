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

#ifndef XLD_TESTS_SUPPORT_FIXTURES_HPP_
#define XLD_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "xld/store/types.hpp"

namespace xld::testing {

// `n` records of which the first `stereo` prefer the stereotypical sentence.
inline std::vector<store::PreferenceRecord> preference_records(
    std::size_t stereo, std::size_t n, const std::string& lang, store::BiasType type, int sample,
    const std::string& condition) {
  std::vector<store::PreferenceRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    store::PreferenceRecord r;
    r.pair_id = lang + "-" + std::to_string(sample) + "-" + std::to_string(i);
    r.language = store::LanguageId(lang);
    r.bias_type = type;
    r.sample_index = sample;
    r.logp_stereo = i < stereo ? -10.0 : -12.5;
    r.logp_anti = -11.0 - 0.01 * static_cast<double>(i);
    r.condition = condition;
    out.push_back(std::move(r));
  }
  return out;
}

inline const std::vector<std::string>& fixture_languages() {
  static const std::vector<std::string> langs = {"en", "fr", "de", "nl"};
  return langs;
}

inline const std::vector<std::string>& fixture_conditions() {
  static const std::vector<std::string> conds = {
      "base", "inlp-original-en", "inlp-latent-en", "sentdebias-original-en",
      "sentdebias-latent-en"};
  return conds;
}

// Full report grid: 4 evaluation languages × 5 conditions × 3 bias types
// × 3 samples of 40 records. The en/base cell has samples 26, 26 and 25 for
// every bias type, so its average deviation is (15 + 15 + 12.5) / 3.
inline std::vector<store::PreferenceRecord> bias_grid_fixture() {
  std::vector<store::PreferenceRecord> out;
  const store::BiasType types[] = {store::BiasType::kGender, store::BiasType::kRace,
                                   store::BiasType::kReligion};
  const auto& langs = fixture_languages();
  const auto& conds = fixture_conditions();
  for (std::size_t l = 0; l < langs.size(); ++l) {
    for (std::size_t c = 0; c < conds.size(); ++c) {
      for (std::size_t t = 0; t < 3; ++t) {
        for (int s = 0; s < 3; ++s) {
          std::size_t stereo;
          if (l == 0 && c == 0) {
            stereo = s == 2 ? 25 : 26;
          } else {
            stereo = 18 + (l * 7 + c * 5 + t * 3 + static_cast<std::size_t>(s)) % 12;
          }
          auto part = preference_records(stereo, 40, langs[l], types[t], s, conds[c]);
          out.insert(out.end(), part.begin(), part.end());
        }
      }
    }
  }
  return out;
}

}  // namespace xld::testing

#endif  // XLD_TESTS_SUPPORT_FIXTURES_HPP_
