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

#include "xld/store/attributes.hpp"

#include <set>
#include <sstream>

#include "tsv.hpp"
#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::store {
namespace detail {
extern const std::pair<std::string_view, std::string_view> kBundledAttributeFiles[];
extern const std::size_t kBundledAttributeFileCount;
}  // namespace detail

namespace {

std::optional<std::string_view> find_bundled(std::string_view name) {
  for (std::size_t i = 0; i < detail::kBundledAttributeFileCount; ++i) {
    if (detail::kBundledAttributeFiles[i].first == name) return detail::kBundledAttributeFiles[i].second;
  }
  return std::nullopt;
}

}  // namespace

AttributeList parse_attribute_list(const LanguageId& language, BiasType bias_type,
                                   std::string_view entries_text,
                                   std::optional<std::string_view> pairs_text) {
  AttributeList list{language, bias_type, {}, {}};
  tsv::for_each_line(entries_text, [&](std::size_t, std::string_view line) {
    if (!line.empty()) list.entries.emplace_back(line);
  });
  if (pairs_text) {
    tsv::for_each_line(*pairs_text, [&](std::size_t line_no, std::string_view line) {
      if (line.empty()) return;
      std::istringstream in{std::string(line)};
      long i = -1;
      long j = -1;
      std::string rest;
      if (!(in >> i >> j) || (in >> rest) || i < 0 || j < 0) {
        throw ParseError("pairing line must hold two non-negative indices", line_no);
      }
      list.pairing.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    });
  }
  list.validate();
  return list;
}

AttributeList read_attribute_list(const LanguageId& language, BiasType bias_type,
                                  const std::filesystem::path& entries_path,
                                  const std::optional<std::filesystem::path>& pairs_path) {
  const std::string entries = read_file_bytes(entries_path);
  if (!pairs_path) return parse_attribute_list(language, bias_type, entries);
  const std::string pairs = read_file_bytes(*pairs_path);
  return parse_attribute_list(language, bias_type, entries, pairs);
}

void write_attribute_list(const AttributeList& list, const std::filesystem::path& entries_path,
                          const std::optional<std::filesystem::path>& pairs_path) {
  list.validate();
  std::string entries;
  for (const auto& e : list.entries) entries += e + '\n';
  write_file_bytes(entries_path, entries);
  if (pairs_path) {
    std::string pairs;
    for (const auto& [i, j] : list.pairing) pairs += std::to_string(i) + ' ' + std::to_string(j) + '\n';
    write_file_bytes(*pairs_path, pairs);
  }
}

AttributeList bundled_attribute_list(const LanguageId& language, BiasType bias_type) {
  const std::string stem = language.code() + "/" + std::string(to_string(bias_type));
  const auto entries = find_bundled(stem + ".txt");
  if (!entries) {
    throw DataError("no bundled " + std::string(to_string(bias_type)) + " list for '" +
                    language.code() + "'");
  }
  return parse_attribute_list(language, bias_type, *entries, find_bundled(stem + ".pairs"));
}

std::vector<LanguageId> bundled_languages() {
  std::set<LanguageId> langs;
  for (std::size_t i = 0; i < detail::kBundledAttributeFileCount; ++i) {
    const std::string_view name = detail::kBundledAttributeFiles[i].first;
    langs.insert(LanguageId(std::string(name.substr(0, name.find('/')))));
  }
  return {langs.begin(), langs.end()};
}

}  // namespace xld::store
