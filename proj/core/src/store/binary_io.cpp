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

#include "xld/store/binary_io.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include "xld/error.hpp"

namespace xld::store {

void ByteWriter::put_bytes(std::string_view bytes) { buffer_.append(bytes); }

void ByteWriter::put_u8(std::uint8_t v) { buffer_.push_back(static_cast<char>(v)); }

void ByteWriter::put_u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void ByteWriter::put_u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buffer_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void ByteWriter::put_f32(float v) { put_u32(std::bit_cast<std::uint32_t>(v)); }

void ByteWriter::put_f32s(std::span<const float> values) {
  buffer_.reserve(buffer_.size() + 4 * values.size());
  for (float v : values) put_f32(v);
}

void ByteWriter::put_string(std::string_view s) {
  put_u32(static_cast<std::uint32_t>(s.size()));
  put_bytes(s);
}

void ByteReader::fail(const std::string& what, std::size_t at) const {
  throw FormatError(what, at);
}

void ByteReader::require(std::size_t n, std::string_view what) const {
  if (remaining() < n) {
    fail("truncated while reading " + std::string(what) + " (need " + std::to_string(n) +
             " bytes, " + std::to_string(remaining()) + " left)",
         offset_);
  }
}

void ByteReader::expect_magic(std::string_view magic) {
  const std::size_t at = offset_;
  if (remaining() < magic.size() || bytes_.substr(offset_, magic.size()) != magic) {
    fail("bad magic, expected '" + std::string(magic) + "'", at);
  }
  offset_ += magic.size();
}

std::string_view ByteReader::get_bytes(std::size_t n, std::string_view what) {
  require(n, what);
  auto out = bytes_.substr(offset_, n);
  offset_ += n;
  return out;
}

std::uint8_t ByteReader::get_u8(std::string_view what) {
  require(1, what);
  return static_cast<std::uint8_t>(bytes_[offset_++]);
}

std::uint32_t ByteReader::get_u32(std::string_view what) {
  require(4, what);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[offset_ + i])) << (8 * i);
  offset_ += 4;
  return v;
}

std::uint64_t ByteReader::get_u64(std::string_view what) {
  require(8, what);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[offset_ + i])) << (8 * i);
  offset_ += 8;
  return v;
}

float ByteReader::get_f32(std::string_view what) { return std::bit_cast<float>(get_u32(what)); }

std::vector<float> ByteReader::get_f32s(std::size_t count, std::string_view what) {
  if (count > remaining() / 4) require(count * 4, what);
  std::vector<float> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = get_f32(what);
  return out;
}

std::string ByteReader::get_string(std::string_view what) {
  const std::uint32_t len = get_u32(what);
  return std::string(get_bytes(len, what));
}

void ByteReader::expect_end() const {
  if (remaining() != 0) {
    fail(std::to_string(remaining()) + " unexpected trailing bytes", offset_);
  }
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace xld::store
