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

#ifndef XLD_DEBIAS_SPACE_HPP_
#define XLD_DEBIAS_SPACE_HPP_

#include <optional>
#include <string_view>

namespace xld::debias {

// Which representation a transform was fit in: the model's own hidden space
// or the autoencoder's cross-lingual latent space.
enum class SpaceTag { kOriginal, kLatent };

std::string_view to_string(SpaceTag tag) noexcept;
std::optional<SpaceTag> parse_space_tag(std::string_view text) noexcept;

}  // namespace xld::debias

#endif  // XLD_DEBIAS_SPACE_HPP_
