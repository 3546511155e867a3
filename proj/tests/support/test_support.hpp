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

#ifndef XLD_TESTS_SUPPORT_TEST_SUPPORT_HPP_
#define XLD_TESTS_SUPPORT_TEST_SUPPORT_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "xld/numcore/matrix.hpp"
#include "xld/numcore/rng.hpp"

namespace xld::testing {

inline numcore::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                     double scale = 1.0) {
  numcore::Rng rng(seed);
  numcore::Matrix m(rows, cols);
  for (float& v : m.values()) v = static_cast<float>(scale * rng.normal());
  return m;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("xld-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace xld::testing

#endif  // XLD_TESTS_SUPPORT_TEST_SUPPORT_HPP_
