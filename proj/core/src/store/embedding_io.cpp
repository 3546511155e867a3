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

#include "xld/store/embedding_io.hpp"

#include <cmath>

#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::store {

std::string encode_embeddings(const EmbeddingSet& set) {
  set.validate();
  ByteWriter w;
  w.put_bytes(kEmbeddingMagic);
  w.put_u8(kEmbeddingVersion);
  w.put_u32(static_cast<std::uint32_t>(set.matrix.rows()));
  w.put_u32(static_cast<std::uint32_t>(set.matrix.cols()));
  w.put_string(set.language.code());
  w.put_string(to_string(set.split));
  for (const auto& id : set.ids) w.put_string(id);
  w.put_f32s(set.matrix.values());
  return w.take();
}

EmbeddingSet decode_embeddings(std::string_view bytes, std::optional<std::size_t> expected_dim) {
  ByteReader r(bytes);
  r.expect_magic(kEmbeddingMagic);
  const std::size_t version_at = r.offset();
  if (const auto version = r.get_u8("version"); version != kEmbeddingVersion) {
    r.fail("unsupported version " + std::to_string(version), version_at);
  }
  const std::uint32_t rows = r.get_u32("row count");
  const std::size_t cols_at = r.offset();
  const std::uint32_t cols = r.get_u32("column count");
  if (expected_dim && cols != *expected_dim) {
    r.fail("dimension " + std::to_string(cols) + " does not match workspace dimension " +
               std::to_string(*expected_dim),
           cols_at);
  }
  const std::size_t lang_at = r.offset();
  const std::string lang = r.get_string("language");
  if (!LanguageId::is_valid(lang)) r.fail("invalid language code '" + lang + "'", lang_at);
  const std::size_t split_at = r.offset();
  const std::string split_text = r.get_string("split");
  const auto split = parse_split(split_text);
  if (!split) r.fail("unknown split '" + split_text + "'", split_at);

  EmbeddingSet set;
  set.language = LanguageId(lang);
  set.split = *split;
  set.ids.reserve(rows);
  for (std::uint32_t i = 0; i < rows; ++i) set.ids.push_back(r.get_string("sentence id"));
  const std::size_t payload_at = r.offset();
  std::vector<float> payload =
      r.get_f32s(static_cast<std::size_t>(rows) * cols, "embedding payload");
  r.expect_end();
  for (std::size_t i = 0; i < payload.size(); ++i) {
    if (!std::isfinite(payload[i])) r.fail("non-finite embedding value", payload_at + 4 * i);
  }
  set.matrix = numcore::Matrix(rows, cols, std::move(payload));
  try {
    set.validate();
  } catch (const DataError& e) {
    r.fail(e.what(), payload_at);
  }
  return set;
}

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
  write_file_bytes(path, encode_embeddings(set));
}

EmbeddingSet read_embeddings(const std::filesystem::path& path,
                             std::optional<std::size_t> expected_dim) {
  return decode_embeddings(read_file_bytes(path), expected_dim);
}

}  // namespace xld::store
