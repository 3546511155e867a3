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

#ifndef XLD_STORE_PAIR_DATASET_HPP_
#define XLD_STORE_PAIR_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "xld/store/types.hpp"

namespace xld::store {

// Sentence ids of one language, without payload.
struct LanguageIds {
  LanguageId language;
  std::vector<std::string> ids;
};

struct PairExclusion {
  LanguageId lang_a;
  LanguageId lang_b;
  // Ids present on one side of the pair only.
  std::size_t missing_in_a = 0;
  std::size_t missing_in_b = 0;
};

struct PairDataset {
  // One entry per unordered language pair, lang_a < lang_b, in
  // lexicographic order of (lang_a, lang_b).
  std::vector<ParallelPairSet> pair_sets;
  std::vector<PairExclusion> exclusions;

  std::size_t total_pairs() const noexcept;
  std::size_t total_excluded() const noexcept;
};

// Aligns by id equality: for every unordered language pair, every id present
// in both languages forms a pair, listed in lang_a's row order. Ids present
// on one side only are skipped and counted in `exclusions`.
PairDataset build_pair_dataset(std::span<const LanguageIds> languages);
PairDataset build_pair_dataset(std::span<const EmbeddingSet> sets);

// Uses explicit alignments instead of id equality. Pairs are canonicalised
// to lang_a < lang_b, duplicates removed, and pairs whose ids do not resolve
// are skipped and counted.
PairDataset build_pair_dataset(std::span<const EmbeddingSet> sets,
                               std::span<const ParallelPairSet> manifest);

// Manifest TSV: header `lang_a lang_b id_a id_b`, one aligned pair per row.
void write_pair_manifest(std::span<const ParallelPairSet> sets, const std::filesystem::path& path);
std::vector<ParallelPairSet> read_pair_manifest(const std::filesystem::path& path);
std::string encode_pair_manifest(std::span<const ParallelPairSet> sets);
std::vector<ParallelPairSet> decode_pair_manifest(std::string_view text);

}  // namespace xld::store

#endif  // XLD_STORE_PAIR_DATASET_HPP_
