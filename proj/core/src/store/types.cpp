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

#include "xld/store/types.hpp"

#include <unordered_set>

#include "xld/error.hpp"

namespace xld::store {

LanguageId::LanguageId(std::string code) : code_(std::move(code)) {
  if (!is_valid(code_)) {
    throw ParameterError("language id '" + code_ + "' must be 2-3 lower-case ASCII letters");
  }
}

bool LanguageId::is_valid(std::string_view code) noexcept {
  if (code.size() < 2 || code.size() > 3) return false;
  for (char c : code)
    if (c < 'a' || c > 'z') return false;
  return true;
}

std::vector<LanguageId> parse_language_list(std::string_view csv) {
  std::vector<LanguageId> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? csv.size() : comma;
    std::string item(csv.substr(start, end - start));
    if (!item.empty()) {
      LanguageId id(item);
      for (const auto& seen : out)
        if (seen == id) throw ParameterError("language '" + item + "' listed twice");
      out.push_back(std::move(id));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
    case Split::kEval: return "eval";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view text) noexcept {
  if (text == "train") return Split::kTrain;
  if (text == "dev") return Split::kDev;
  if (text == "test") return Split::kTest;
  if (text == "eval") return Split::kEval;
  return std::nullopt;
}

std::string_view to_string(BiasType type) noexcept {
  switch (type) {
    case BiasType::kGender: return "gender";
    case BiasType::kRace: return "race";
    case BiasType::kReligion: return "religion";
  }
  return "gender";
}

std::optional<BiasType> parse_bias_type(std::string_view text) noexcept {
  if (text == "gender") return BiasType::kGender;
  if (text == "race") return BiasType::kRace;
  if (text == "religion") return BiasType::kReligion;
  return std::nullopt;
}

void EmbeddingSet::validate() const {
  if (ids.size() != matrix.rows()) {
    throw DataError("embedding set has " + std::to_string(ids.size()) + " ids for " +
                    std::to_string(matrix.rows()) + " rows");
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids.size());
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw DataError("duplicate sentence id '" + id + "'");
  }
}

void AttributeList::validate() const {
  if (entries.empty()) throw DataError("attribute list is empty");
  for (const auto& [i, j] : pairing) {
    if (i >= entries.size() || j >= entries.size() || i == j) {
      throw DataError("attribute pairing (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") is out of range for " + std::to_string(entries.size()) + " entries");
    }
  }
}

}  // namespace xld::store
