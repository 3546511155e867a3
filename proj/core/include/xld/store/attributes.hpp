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

#ifndef XLD_STORE_ATTRIBUTES_HPP_
#define XLD_STORE_ATTRIBUTES_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xld/store/types.hpp"

namespace xld::store {

// Attribute lists are plain UTF-8 text, one word or phrase per line. The
// optional sidecar holds one counterfactual pair per line as two 0-based
// entry indices separated by whitespace.
AttributeList parse_attribute_list(const LanguageId& language, BiasType bias_type,
                                   std::string_view entries_text,
                                   std::optional<std::string_view> pairs_text = std::nullopt);

AttributeList read_attribute_list(const LanguageId& language, BiasType bias_type,
                                  const std::filesystem::path& entries_path,
                                  const std::optional<std::filesystem::path>& pairs_path =
                                      std::nullopt);
void write_attribute_list(const AttributeList& list, const std::filesystem::path& entries_path,
                          const std::optional<std::filesystem::path>& pairs_path = std::nullopt);

// Lists compiled into the library for en, fr, de and nl. Gender lists carry
// adjacent-entry pairings; race and religion lists are unpaired.
AttributeList bundled_attribute_list(const LanguageId& language, BiasType bias_type);
std::vector<LanguageId> bundled_languages();

}  // namespace xld::store

#endif  // XLD_STORE_ATTRIBUTES_HPP_
