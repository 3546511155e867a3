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

#include "xld/debias/cda.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>

#include "xld/error.hpp"

namespace xld::debias {
namespace {

constexpr std::string_view kPunctuation = ",.;:!?\"'()[]{}";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_punct(char c) { return kPunctuation.find(c) != std::string_view::npos; }

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

char to_upper(char c) { return c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : c; }

bool is_all_upper(std::string_view s) {
  if (s.size() < 2) return false;
  for (char c : s)
    if (c >= 'a' && c <= 'z') return false;
  return std::any_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

// A token split into a matched core and the punctuation around it.
struct TokenMatch {
  std::size_t core_begin = 0;
  std::size_t core_end = 0;
  std::string key;
};

// Longest core (after stripping leading punctuation, then trailing
// punctuation one character at a time) found by `lookup`.
template <typename Lookup>
std::optional<TokenMatch> match_token(std::string_view token, Lookup&& lookup) {
  std::size_t begin = 0;
  while (begin < token.size() && is_punct(token[begin])) ++begin;
  std::size_t end = token.size();
  while (end > begin) {
    std::string key = ascii_lower(token.substr(begin, end - begin));
    if (lookup(key)) return TokenMatch{begin, end, std::move(key)};
    if (!is_punct(token[end - 1])) break;
    --end;
  }
  return std::nullopt;
}

template <typename Fn>
void for_each_token(std::string_view text, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) fn(start, text.substr(start, i - start));
  }
}

}  // namespace

std::size_t EmbeddingGroups::total_vectors() const noexcept {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.rows();
  return n;
}

std::size_t EmbeddingGroups::dim() const noexcept {
  for (const auto& g : groups)
    if (g.cols() > 0) return g.cols();
  return 0;
}

std::map<std::string, std::string> build_swap_map(const store::AttributeList& attrs) {
  attrs.validate();
  std::map<std::string, std::string> swaps;
  for (const auto& [i, j] : attrs.pairing) {
    const std::string a = ascii_lower(attrs.entries[i]);
    const std::string b = ascii_lower(attrs.entries[j]);
    swaps.try_emplace(a, b);
    swaps.try_emplace(b, a);
  }
  return swaps;
}

std::string swap_attributes(std::string_view text, const std::map<std::string, std::string>& swaps,
                            std::size_t* swapped) {
  std::string out;
  out.reserve(text.size());
  std::size_t copied = 0;
  std::size_t count = 0;
  for_each_token(text, [&](std::size_t start, std::string_view token) {
    auto m = match_token(token, [&](const std::string& key) { return swaps.contains(key); });
    if (!m) return;
    std::string replacement = swaps.at(m->key);
    const std::string_view core = token.substr(m->core_begin, m->core_end - m->core_begin);
    if (is_all_upper(core)) {
      for (char& c : replacement) c = to_upper(c);
    } else if (!core.empty() && core[0] >= 'A' && core[0] <= 'Z' && !replacement.empty()) {
      replacement[0] = to_upper(replacement[0]);
    }
    out.append(text.substr(copied, start + m->core_begin - copied));
    out.append(replacement);
    copied = start + m->core_end;
    ++count;
  });
  out.append(text.substr(copied));
  if (swapped) *swapped = count;
  return out;
}

std::vector<std::string> find_attribute_terms(std::string_view text,
                                              const store::AttributeList& attrs) {
  std::set<std::string> terms;
  for (const auto& e : attrs.entries) terms.insert(ascii_lower(e));
  std::vector<std::string> found;
  for_each_token(text, [&](std::size_t, std::string_view token) {
    auto m = match_token(token, [&](const std::string& key) { return terms.contains(key); });
    if (m && std::find(found.begin(), found.end(), m->key) == found.end()) found.push_back(m->key);
  });
  return found;
}

std::vector<TextGroup> build_cda_text_groups(std::span<const Sentence> sentences,
                                             const store::AttributeList& attrs,
                                             CdaReport* report) {
  attrs.validate();
  CdaReport local;
  CdaReport& rep = report ? *report : local;
  rep = {};
  rep.sentences = sentences.size();
  std::vector<TextGroup> groups;

  if (attrs.paired()) {
    const auto swaps = build_swap_map(attrs);
    for (const auto& s : sentences) {
      std::size_t swapped = 0;
      std::string variant = swap_attributes(s.text, swaps, &swapped);
      if (swapped == 0) {
        rep.excluded_ids.push_back(s.id);
        continue;
      }
      groups.push_back({s.id, {s.text, std::move(variant)}});
    }
    return groups;
  }

  std::map<std::string, std::size_t> slot;
  for (const auto& s : sentences) {
    const auto terms = find_attribute_terms(s.text, attrs);
    if (terms.empty()) {
      rep.excluded_ids.push_back(s.id);
      continue;
    }
    for (const auto& t : terms) {
      auto [it, inserted] = slot.try_emplace(t, groups.size());
      if (inserted) groups.push_back({t, {}});
      groups[it->second].texts.push_back(s.text);
    }
  }
  return groups;
}

EmbeddingGroups build_cda_sets(std::span<const Sentence> sentences,
                               const store::AttributeList& attrs, const SentenceEmbedder& embed,
                               CdaReport* report) {
  const auto text_groups = build_cda_text_groups(sentences, attrs, report);
  EmbeddingGroups out;
  out.kind = attrs.paired() ? GroupKind::kCounterfactual : GroupKind::kPerTerm;
  std::size_t dim = 0;
  for (const auto& g : text_groups) {
    Matrix m = embed(g.texts);
    if (m.rows() != g.texts.size()) {
      throw ShapeError("embedder returned " + std::to_string(m.rows()) + " rows for " +
                       std::to_string(g.texts.size()) + " texts");
    }
    if (dim != 0 && m.cols() != dim) throw ShapeError("embedder changed dimension");
    dim = m.cols();
    out.keys.push_back(g.key);
    out.groups.push_back(std::move(m));
  }
  return out;
}

EmbeddingGroups group_precomputed(const store::EmbeddingSet& set,
                                  std::span<const store::AttributeAnnotation> annotations,
                                  GroupKind kind) {
  std::unordered_map<std::string_view, const store::AttributeAnnotation*> by_id;
  for (const auto& a : annotations) by_id.emplace(a.id, &a);
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t row = 0; row < set.ids.size(); ++row) {
    auto it = by_id.find(set.ids[row]);
    if (it == by_id.end()) continue;
    const std::string& key =
        kind == GroupKind::kCounterfactual ? it->second->group : it->second->label;
    if (kind == GroupKind::kCounterfactual && key == store::kNoGroup) continue;
    members[key].push_back(row);
  }
  EmbeddingGroups out;
  out.kind = kind;
  for (const auto& [key, rows] : members) {
    out.keys.push_back(key);
    out.groups.push_back(numcore::gather_rows(set.matrix, rows));
  }
  return out;
}

}  // namespace xld::debias
