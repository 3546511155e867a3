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

#ifndef XLD_ERROR_HPP_
#define XLD_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xld {

// Base class of every error raised by the toolkit. Subclasses carry a coarse
// category so the command-line front end can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  enum class Category { kUsage, kData, kNumeric };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error(Category::kData, "shape error: " + what) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(Category::kUsage, "parameter error: " + what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::kData, "data error: " + what) {}
};

// Binary file could not be decoded; `offset` is the byte position of the
// first field that failed to validate.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(Category::kData,
              "format error at byte offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

// Text row failed validation; `line` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(Category::kData, "parse error on line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RankError : public Error {
 public:
  explicit RankError(const std::string& what) : Error(Category::kData, "rank error: " + what) {}
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what)
      : Error(Category::kNumeric, "divergence: " + what) {}
};

}  // namespace xld

#endif  // XLD_ERROR_HPP_
