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

#include "xld/store/scores_io.hpp"

#include <cmath>

#include "tsv.hpp"
#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::store {
namespace {

struct CommonColumns {
  std::string pair_id;
  LanguageId language;
  BiasType bias_type;
  int sample_index;
};

CommonColumns parse_common(const std::vector<std::string_view>& f, std::size_t line_no) {
  if (f[0].empty()) throw ParseError("empty pair_id", line_no);
  if (!LanguageId::is_valid(f[1])) {
    throw ParseError("invalid language code '" + std::string(f[1]) + "'", line_no);
  }
  const auto bias = parse_bias_type(f[2]);
  if (!bias) throw ParseError("unknown bias_type '" + std::string(f[2]) + "'", line_no);
  const auto sample = tsv::parse_int(f[3]);
  if (!sample || *sample < 0 || *sample >= kSamplesPerLanguage) {
    throw ParseError("sample must be an integer in [0, " + std::to_string(kSamplesPerLanguage) +
                         "), got '" + std::string(f[3]) + "'",
                     line_no);
  }
  return {std::string(f[0]), LanguageId(std::string(f[1])), *bias, static_cast<int>(*sample)};
}

double parse_logp(std::string_view text, std::string_view column, std::size_t line_no) {
  const auto v = tsv::parse_double(text);
  if (!v) throw ParseError(std::string(column) + " is not a number: '" + std::string(text) + "'",
                           line_no);
  if (!std::isfinite(*v)) throw ParseError(std::string(column) + " must be finite", line_no);
  if (*v > 0.0) throw ParseError("log-probability must be <= 0 (" + std::string(column) + ")",
                                 line_no);
  return *v;
}

template <typename Row, typename ParseRow>
std::vector<Row> decode_table(std::string_view text, std::string_view header, std::size_t columns,
                              ParseRow&& parse_row) {
  std::vector<Row> out;
  bool saw_header = false;
  tsv::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line_no == 1) {
      if (line != header) throw ParseError("expected header '" + std::string(header) + "'", 1);
      saw_header = true;
      return;
    }
    if (line.empty()) return;
    const auto f = tsv::split_fields(line);
    if (f.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " columns, found " +
                           std::to_string(f.size()),
                       line_no);
    }
    out.push_back(parse_row(f, line_no));
  });
  if (!saw_header) throw ParseError("missing header", 1);
  return out;
}

void require_no_tabs(std::string_view field, std::string_view name) {
  if (field.find_first_of("\t\n\r") != std::string_view::npos) {
    throw DataError(std::string(name) + " contains a tab or newline");
  }
}

}  // namespace

std::string encode_scores(std::span<const PreferenceRecord> records) {
  std::string out(kScoreHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    require_no_tabs(r.pair_id, "pair_id");
    require_no_tabs(r.condition, "condition");
    if (!(r.logp_stereo <= 0.0) || !(r.logp_anti <= 0.0)) {
      throw DataError("record '" + r.pair_id + "': log-probability must be <= 0");
    }
    out += r.pair_id + '\t' + r.language.code() + '\t' + std::string(to_string(r.bias_type)) +
           '\t' + std::to_string(r.sample_index) + '\t' + tsv::format_double(r.logp_stereo) +
           '\t' + tsv::format_double(r.logp_anti) + '\t' + r.condition + '\n';
  }
  return out;
}

std::vector<PreferenceRecord> decode_scores(std::string_view text) {
  return decode_table<PreferenceRecord>(
      text, kScoreHeader, 7, [](const std::vector<std::string_view>& f, std::size_t line_no) {
        auto common = parse_common(f, line_no);
        PreferenceRecord r;
        r.pair_id = std::move(common.pair_id);
        r.language = std::move(common.language);
        r.bias_type = common.bias_type;
        r.sample_index = common.sample_index;
        r.logp_stereo = parse_logp(f[4], "logp_stereo", line_no);
        r.logp_anti = parse_logp(f[5], "logp_anti", line_no);
        if (f[6].empty()) throw ParseError("empty condition", line_no);
        r.condition = std::string(f[6]);
        return r;
      });
}

void write_scores(std::span<const PreferenceRecord> records, const std::filesystem::path& path) {
  write_file_bytes(path, encode_scores(records));
}

std::vector<PreferenceRecord> read_scores(const std::filesystem::path& path) {
  return decode_scores(read_file_bytes(path));
}

std::string encode_eval_pairs(std::span<const EvalPair> pairs) {
  std::string out(kEvalPairHeader);
  out.push_back('\n');
  for (const auto& p : pairs) {
    require_no_tabs(p.pair_id, "pair_id");
    require_no_tabs(p.sent_stereo, "sent_stereo");
    require_no_tabs(p.sent_anti, "sent_anti");
    if (p.sent_stereo == p.sent_anti) {
      throw DataError("pair '" + p.pair_id + "' has identical sentences");
    }
    out += p.pair_id + '\t' + p.language.code() + '\t' + std::string(to_string(p.bias_type)) +
           '\t' + std::to_string(p.sample_index) + '\t' + p.sent_stereo + '\t' + p.sent_anti +
           '\n';
  }
  return out;
}

std::vector<EvalPair> decode_eval_pairs(std::string_view text) {
  return decode_table<EvalPair>(
      text, kEvalPairHeader, 6, [](const std::vector<std::string_view>& f, std::size_t line_no) {
        auto common = parse_common(f, line_no);
        if (f[4].empty() || f[5].empty()) throw ParseError("empty sentence", line_no);
        if (f[4] == f[5]) throw ParseError("stereotypical and anti sentences are identical",
                                           line_no);
        return EvalPair{std::move(common.pair_id), std::move(common.language), common.bias_type,
                        common.sample_index,       std::string(f[4]),          std::string(f[5])};
      });
}

void write_eval_pairs(std::span<const EvalPair> pairs, const std::filesystem::path& path) {
  write_file_bytes(path, encode_eval_pairs(pairs));
}

std::vector<EvalPair> read_eval_pairs(const std::filesystem::path& path) {
  return decode_eval_pairs(read_file_bytes(path));
}

}  // namespace xld::store
