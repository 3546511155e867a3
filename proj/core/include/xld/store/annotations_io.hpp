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

#ifndef XLD_STORE_ANNOTATIONS_IO_HPP_
#define XLD_STORE_ANNOTATIONS_IO_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xld::store {

// Per-sentence metadata for fitting debiasing transforms. `label` is the
// protected-attribute class of the sentence (for example "male"/"female",
// derived from which attribute term it contains) and `group` ties
// counterfactual variants of one source sentence together ("-" when the
// sentence belongs to no counterfactual group).
struct AttributeAnnotation {
  std::string id;
  std::string label;
  std::string group;

  friend bool operator==(const AttributeAnnotation&, const AttributeAnnotation&) = default;
};

inline constexpr std::string_view kAnnotationHeader = "id\tlabel\tgroup";
inline constexpr std::string_view kNoGroup = "-";

std::string encode_annotations(std::span<const AttributeAnnotation> rows);
std::vector<AttributeAnnotation> decode_annotations(std::string_view text);
void write_annotations(std::span<const AttributeAnnotation> rows,
                       const std::filesystem::path& path);
std::vector<AttributeAnnotation> read_annotations(const std::filesystem::path& path);

}  // namespace xld::store

#endif  // XLD_STORE_ANNOTATIONS_IO_HPP_
