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

#include "xld/store/annotations_io.hpp"

#include <unordered_set>

#include "tsv.hpp"
#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::store {

std::string encode_annotations(std::span<const AttributeAnnotation> rows) {
  std::string out(kAnnotationHeader);
  out.push_back('\n');
  for (const auto& r : rows) {
    for (std::string_view field : {std::string_view(r.id), std::string_view(r.label),
                                   std::string_view(r.group)}) {
      if (field.empty() || field.find_first_of("\t\n\r") != std::string_view::npos) {
        throw DataError("annotation for '" + r.id + "' has an empty or multi-line field");
      }
    }
    out += r.id + '\t' + r.label + '\t' + r.group + '\n';
  }
  return out;
}

std::vector<AttributeAnnotation> decode_annotations(std::string_view text) {
  std::vector<AttributeAnnotation> out;
  std::unordered_set<std::string> ids;
  bool saw_header = false;
  tsv::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line_no == 1) {
      if (line != kAnnotationHeader) {
        throw ParseError("expected header '" + std::string(kAnnotationHeader) + "'", 1);
      }
      saw_header = true;
      return;
    }
    if (line.empty()) return;
    const auto f = tsv::split_fields(line);
    if (f.size() != 3) {
      throw ParseError("expected 3 columns, found " + std::to_string(f.size()), line_no);
    }
    if (f[0].empty() || f[1].empty() || f[2].empty()) throw ParseError("empty field", line_no);
    if (!ids.emplace(f[0]).second) {
      throw ParseError("duplicate id '" + std::string(f[0]) + "'", line_no);
    }
    out.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2])});
  });
  if (!saw_header) throw ParseError("missing header", 1);
  return out;
}

void write_annotations(std::span<const AttributeAnnotation> rows,
                       const std::filesystem::path& path) {
  write_file_bytes(path, encode_annotations(rows));
}

std::vector<AttributeAnnotation> read_annotations(const std::filesystem::path& path) {
  return decode_annotations(read_file_bytes(path));
}

}  // namespace xld::store
