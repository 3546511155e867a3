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

#ifndef XLD_STORE_BINARY_IO_HPP_
#define XLD_STORE_BINARY_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xld::store {

// Append-only little-endian encoder shared by the binary container formats.
class ByteWriter {
 public:
  void put_bytes(std::string_view bytes);
  void put_u8(std::uint8_t v);
  void put_u32(std::uint32_t v);
  void put_u64(std::uint64_t v);
  void put_f32(float v);
  void put_f32s(std::span<const float> values);
  // u32 byte length followed by the UTF-8 bytes.
  void put_string(std::string_view s);

  const std::string& bytes() const noexcept { return buffer_; }
  std::string take() noexcept { return std::move(buffer_); }

 private:
  std::string buffer_;
};

// Bounds-checked little-endian decoder. Every failure raises FormatError
// carrying the offset of the field being read.
class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  void expect_magic(std::string_view magic);
  std::string_view get_bytes(std::size_t n, std::string_view what);
  std::uint8_t get_u8(std::string_view what);
  std::uint32_t get_u32(std::string_view what);
  std::uint64_t get_u64(std::string_view what);
  float get_f32(std::string_view what);
  std::vector<float> get_f32s(std::size_t count, std::string_view what);
  std::string get_string(std::string_view what);

  std::size_t offset() const noexcept { return offset_; }
  std::size_t remaining() const noexcept { return bytes_.size() - offset_; }
  // Throws if unread bytes remain.
  void expect_end() const;
  [[noreturn]] void fail(const std::string& what, std::size_t at) const;

 private:
  void require(std::size_t n, std::string_view what) const;

  std::string_view bytes_;
  std::size_t offset_ = 0;
};

std::string read_file_bytes(const std::filesystem::path& path);
// Writes to a sibling temporary and renames it over `path`.
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace xld::store

#endif  // XLD_STORE_BINARY_IO_HPP_
