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

#ifndef XLD_STORE_TYPES_HPP_
#define XLD_STORE_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xld/numcore/matrix.hpp"

namespace xld::store {

// Lower-case ISO-639 code of two or three ASCII letters ("en", "fr", ...).
class LanguageId {
 public:
  LanguageId() = default;
  // Throws ParameterError unless `code` is 2–3 lower-case ASCII letters.
  explicit LanguageId(std::string code);

  static bool is_valid(std::string_view code) noexcept;

  const std::string& code() const noexcept { return code_; }
  bool empty() const noexcept { return code_.empty(); }

  friend auto operator<=>(const LanguageId&, const LanguageId&) = default;

 private:
  std::string code_;
};

// Parses "en,fr,de" into language ids, rejecting duplicates.
std::vector<LanguageId> parse_language_list(std::string_view csv);

enum class Split { kTrain, kDev, kTest, kEval };
std::string_view to_string(Split split) noexcept;
std::optional<Split> parse_split(std::string_view text) noexcept;

enum class BiasType { kGender, kRace, kReligion };
inline constexpr BiasType kAllBiasTypes[] = {BiasType::kGender, BiasType::kRace,
                                             BiasType::kReligion};
std::string_view to_string(BiasType type) noexcept;
std::optional<BiasType> parse_bias_type(std::string_view text) noexcept;

// Pooled sentence representations of one language/split. Row i belongs to ids[i].
struct EmbeddingSet {
  LanguageId language;
  Split split = Split::kTrain;
  numcore::Matrix matrix;
  std::vector<std::string> ids;

  // Throws DataError if ids are not unique or do not match the row count.
  void validate() const;
  std::size_t dim() const noexcept { return matrix.cols(); }

  friend bool operator==(const EmbeddingSet&, const EmbeddingSet&) = default;
};

// Sentence ids aligned across two languages. lang_a < lang_b canonically.
struct ParallelPairSet {
  LanguageId lang_a;
  LanguageId lang_b;
  std::vector<std::pair<std::string, std::string>> pairs;

  friend bool operator==(const ParallelPairSet&, const ParallelPairSet&) = default;
};

// One stereotype/anti-stereotype sentence pair of the evaluation set.
struct EvalPair {
  std::string pair_id;
  LanguageId language;
  BiasType bias_type = BiasType::kGender;
  int sample_index = 0;
  std::string sent_stereo;
  std::string sent_anti;

  friend bool operator==(const EvalPair&, const EvalPair&) = default;
};

// Sentence log-probabilities (natural log, summed over tokens) of one
// evaluation pair under one model condition.
struct PreferenceRecord {
  std::string pair_id;
  LanguageId language;
  BiasType bias_type = BiasType::kGender;
  int sample_index = 0;
  double logp_stereo = 0.0;
  double logp_anti = 0.0;
  std::string condition;

  friend bool operator==(const PreferenceRecord&, const PreferenceRecord&) = default;
};

struct AttributeList {
  LanguageId language;
  BiasType bias_type = BiasType::kGender;
  std::vector<std::string> entries;
  // Counterfactual swaps as index pairs into `entries`. Empty for
  // multi-group lists.
  std::vector<std::pair<std::size_t, std::size_t>> pairing;

  bool paired() const noexcept { return !pairing.empty(); }
  // Throws DataError on an empty list or out-of-range pairing.
  void validate() const;
};

inline constexpr int kSamplesPerLanguage = 3;

}  // namespace xld::store

#endif  // XLD_STORE_TYPES_HPP_
