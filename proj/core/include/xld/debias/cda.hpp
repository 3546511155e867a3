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

#ifndef XLD_DEBIAS_CDA_HPP_
#define XLD_DEBIAS_CDA_HPP_

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xld/numcore/matrix.hpp"
#include "xld/store/annotations_io.hpp"
#include "xld/store/types.hpp"

namespace xld::debias {

using numcore::Matrix;

enum class GroupKind {
  // Each group holds counterfactual variants of one sentence.
  kCounterfactual,
  // Each group holds the sentences mentioning one attribute term.
  kPerTerm,
};

// Sets of sentence representations from which a bias subspace is estimated.
struct EmbeddingGroups {
  GroupKind kind = GroupKind::kCounterfactual;
  std::vector<std::string> keys;
  std::vector<Matrix> groups;

  std::size_t total_vectors() const noexcept;
  std::size_t dim() const noexcept;
};

struct Sentence {
  std::string id;
  std::string text;
};

struct TextGroup {
  std::string key;
  // Counterfactual groups: the original sentence first, then its swapped
  // variant. Per-term groups: every sentence containing the term.
  std::vector<std::string> texts;
};

struct CdaReport {
  std::size_t sentences = 0;
  std::vector<std::string> excluded_ids;  // no attribute term found
};

// Token-level swap table from a paired attribute list. A term appearing in
// several pairs maps to its partner in the first pair listed.
std::map<std::string, std::string> build_swap_map(const store::AttributeList& attrs);

// Replaces every attribute token simultaneously. Matching is on
// whitespace-separated tokens, case-insensitive for ASCII, with surrounding
// punctuation preserved; a capitalised token keeps its capital.
// `swapped`, if given, receives the number of replaced tokens.
std::string swap_attributes(std::string_view text, const std::map<std::string, std::string>& swaps,
                            std::size_t* swapped = nullptr);

// Attribute terms of `attrs` occurring in `text`, in order of first occurrence.
std::vector<std::string> find_attribute_terms(std::string_view text,
                                              const store::AttributeList& attrs);

// Paired lists yield one counterfactual group per sentence; unpaired lists
// yield one group per attribute term. Sentences without any attribute term
// are excluded and listed in the report.
std::vector<TextGroup> build_cda_text_groups(std::span<const Sentence> sentences,
                                             const store::AttributeList& attrs,
                                             CdaReport* report = nullptr);

// Embeds texts into an n×d matrix, one row per text.
using SentenceEmbedder = std::function<Matrix(std::span<const std::string>)>;

EmbeddingGroups build_cda_sets(std::span<const Sentence> sentences,
                               const store::AttributeList& attrs, const SentenceEmbedder& embed,
                               CdaReport* report = nullptr);

// Groups precomputed embeddings: rows sharing an annotation `group` form a
// counterfactual group; with kPerTerm the annotation `label` is the key
// instead. Rows without an annotation, or with group "-" under
// kCounterfactual, are skipped.
EmbeddingGroups group_precomputed(const store::EmbeddingSet& set,
                                  std::span<const store::AttributeAnnotation> annotations,
                                  GroupKind kind);

}  // namespace xld::debias

#endif  // XLD_DEBIAS_CDA_HPP_
