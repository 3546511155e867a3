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

#ifndef XLD_STORE_SCORES_IO_HPP_
#define XLD_STORE_SCORES_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xld/store/types.hpp"

namespace xld::store {

// Score TSV, UTF-8, one PreferenceRecord per row:
//   pair_id  lang  bias_type  sample  logp_stereo  logp_anti  condition
inline constexpr std::string_view kScoreHeader =
    "pair_id\tlang\tbias_type\tsample\tlogp_stereo\tlogp_anti\tcondition";

std::string encode_scores(std::span<const PreferenceRecord> records);
// Throws ParseError with the 1-based line number of the first bad row.
std::vector<PreferenceRecord> decode_scores(std::string_view text);

void write_scores(std::span<const PreferenceRecord> records, const std::filesystem::path& path);
std::vector<PreferenceRecord> read_scores(const std::filesystem::path& path);

// Evaluation pair TSV:
//   pair_id  lang  bias_type  sample  sent_stereo  sent_anti
inline constexpr std::string_view kEvalPairHeader =
    "pair_id\tlang\tbias_type\tsample\tsent_stereo\tsent_anti";

std::string encode_eval_pairs(std::span<const EvalPair> pairs);
std::vector<EvalPair> decode_eval_pairs(std::string_view text);
void write_eval_pairs(std::span<const EvalPair> pairs, const std::filesystem::path& path);
std::vector<EvalPair> read_eval_pairs(const std::filesystem::path& path);

}  // namespace xld::store

#endif  // XLD_STORE_SCORES_IO_HPP_
