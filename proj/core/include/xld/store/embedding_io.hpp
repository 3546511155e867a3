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

#ifndef XLD_STORE_EMBEDDING_IO_HPP_
#define XLD_STORE_EMBEDDING_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "xld/store/types.hpp"

namespace xld::store {

// XLEB layout (all integers little-endian):
//   "XLEB" | u8 version=1 | u32 rows | u32 cols
//   | u32 len + language | u32 len + split
//   | rows × (u32 len + id bytes)
//   | rows·cols f32 row-major payload
inline constexpr std::string_view kEmbeddingMagic = "XLEB";
inline constexpr std::uint8_t kEmbeddingVersion = 1;

std::string encode_embeddings(const EmbeddingSet& set);
// `expected_dim`, when given, is the workspace dimension the file must match.
EmbeddingSet decode_embeddings(std::string_view bytes,
                               std::optional<std::size_t> expected_dim = std::nullopt);

void write_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);
EmbeddingSet read_embeddings(const std::filesystem::path& path,
                             std::optional<std::size_t> expected_dim = std::nullopt);

}  // namespace xld::store

#endif  // XLD_STORE_EMBEDDING_IO_HPP_
