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

#include "xld/store/pair_dataset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "tsv.hpp"
#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::store {
namespace {

constexpr std::string_view kManifestHeader = "lang_a\tlang_b\tid_a\tid_b";

void require_distinct_languages(std::span<const LanguageIds> languages) {
  if (languages.size() < 2) {
    throw DataError("pair dataset needs at least 2 languages, got " +
                    std::to_string(languages.size()));
  }
  std::set<LanguageId> seen;
  for (const auto& l : languages) {
    if (!seen.insert(l.language).second) {
      throw DataError("language '" + l.language.code() + "' supplied twice");
    }
  }
}

std::vector<LanguageIds> ids_of(std::span<const EmbeddingSet> sets) {
  std::vector<LanguageIds> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back({s.language, s.ids});
  return out;
}

}  // namespace

std::size_t PairDataset::total_pairs() const noexcept {
  std::size_t n = 0;
  for (const auto& s : pair_sets) n += s.pairs.size();
  return n;
}

std::size_t PairDataset::total_excluded() const noexcept {
  std::size_t n = 0;
  for (const auto& e : exclusions) n += e.missing_in_a + e.missing_in_b;
  return n;
}

PairDataset build_pair_dataset(std::span<const LanguageIds> languages) {
  require_distinct_languages(languages);
  std::vector<const LanguageIds*> sorted;
  for (const auto& l : languages) sorted.push_back(&l);
  std::sort(sorted.begin(), sorted.end(),
            [](const LanguageIds* a, const LanguageIds* b) { return a->language < b->language; });

  std::vector<std::unordered_set<std::string_view>> lookup(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    lookup[i].reserve(sorted[i]->ids.size());
    for (const auto& id : sorted[i]->ids) lookup[i].insert(id);
  }

  PairDataset out;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      ParallelPairSet set{sorted[a]->language, sorted[b]->language, {}};
      PairExclusion excl{set.lang_a, set.lang_b, 0, 0};
      for (const auto& id : sorted[a]->ids) {
        if (lookup[b].contains(id)) {
          set.pairs.emplace_back(id, id);
        } else {
          ++excl.missing_in_b;
        }
      }
      for (const auto& id : sorted[b]->ids)
        if (!lookup[a].contains(id)) ++excl.missing_in_a;
      if (excl.missing_in_a + excl.missing_in_b > 0) out.exclusions.push_back(excl);
      out.pair_sets.push_back(std::move(set));
    }
  }
  return out;
}

PairDataset build_pair_dataset(std::span<const EmbeddingSet> sets) {
  const auto ids = ids_of(sets);
  return build_pair_dataset(std::span<const LanguageIds>(ids));
}

PairDataset build_pair_dataset(std::span<const EmbeddingSet> sets,
                               std::span<const ParallelPairSet> manifest) {
  const auto ids = ids_of(sets);
  require_distinct_languages(ids);
  std::map<LanguageId, std::unordered_set<std::string_view>> lookup;
  for (const auto& l : ids) {
    auto& slot = lookup[l.language];
    for (const auto& id : l.ids) slot.insert(id);
  }

  std::map<std::pair<LanguageId, LanguageId>, ParallelPairSet> grouped;
  std::map<std::pair<LanguageId, LanguageId>, PairExclusion> excluded;
  std::set<std::tuple<LanguageId, LanguageId, std::string, std::string>> seen;
  for (const auto& entry : manifest) {
    if (entry.lang_a == entry.lang_b) {
      throw DataError("manifest pairs language '" + entry.lang_a.code() + "' with itself");
    }
    const bool swap = entry.lang_b < entry.lang_a;
    const LanguageId& la = swap ? entry.lang_b : entry.lang_a;
    const LanguageId& lb = swap ? entry.lang_a : entry.lang_b;
    auto ita = lookup.find(la);
    auto itb = lookup.find(lb);
    if (ita == lookup.end() || itb == lookup.end()) {
      throw DataError("manifest references language without embeddings: " + la.code() + "-" +
                      lb.code());
    }
    auto key = std::make_pair(la, lb);
    auto& set = grouped.try_emplace(key, ParallelPairSet{la, lb, {}}).first->second;
    for (const auto& [x, y] : entry.pairs) {
      const std::string& ida = swap ? y : x;
      const std::string& idb = swap ? x : y;
      const bool has_a = ita->second.contains(ida);
      const bool has_b = itb->second.contains(idb);
      if (!has_a || !has_b) {
        auto& e = excluded.try_emplace(key, PairExclusion{la, lb, 0, 0}).first->second;
        if (!has_a) ++e.missing_in_a;
        if (!has_b) ++e.missing_in_b;
        continue;
      }
      if (!seen.emplace(la, lb, ida, idb).second) continue;
      set.pairs.emplace_back(ida, idb);
    }
  }
  PairDataset out;
  for (auto& [key, set] : grouped) out.pair_sets.push_back(std::move(set));
  for (auto& [key, e] : excluded) out.exclusions.push_back(e);
  return out;
}

std::string encode_pair_manifest(std::span<const ParallelPairSet> sets) {
  std::string out(kManifestHeader);
  out.push_back('\n');
  for (const auto& s : sets) {
    for (const auto& [a, b] : s.pairs) {
      out += s.lang_a.code() + '\t' + s.lang_b.code() + '\t' + a + '\t' + b + '\n';
    }
  }
  return out;
}

std::vector<ParallelPairSet> decode_pair_manifest(std::string_view text) {
  std::vector<ParallelPairSet> out;
  std::map<std::pair<LanguageId, LanguageId>, std::size_t> index;
  bool saw_header = false;
  tsv::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line_no == 1) {
      if (line != kManifestHeader) throw ParseError("expected header '" +
                                                    std::string(kManifestHeader) + "'", 1);
      saw_header = true;
      return;
    }
    if (line.empty()) return;
    const auto f = tsv::split_fields(line);
    if (f.size() != 4) {
      throw ParseError("expected 4 columns, found " + std::to_string(f.size()), line_no);
    }
    if (!LanguageId::is_valid(f[0]) || !LanguageId::is_valid(f[1])) {
      throw ParseError("invalid language code", line_no);
    }
    LanguageId a{std::string(f[0])};
    LanguageId b{std::string(f[1])};
    if (a == b) throw ParseError("pair within a single language", line_no);
    if (f[2].empty() || f[3].empty()) throw ParseError("empty sentence id", line_no);
    auto key = std::make_pair(a, b);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({a, b, {}});
    }
    out[it->second].pairs.emplace_back(std::string(f[2]), std::string(f[3]));
  });
  if (!saw_header) throw ParseError("missing header", 1);
  return out;
}

void write_pair_manifest(std::span<const ParallelPairSet> sets, const std::filesystem::path& path) {
  write_file_bytes(path, encode_pair_manifest(sets));
}

std::vector<ParallelPairSet> read_pair_manifest(const std::filesystem::path& path) {
  return decode_pair_manifest(read_file_bytes(path));
}

}  // namespace xld::store
