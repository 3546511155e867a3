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

#include "xld/debias/space.hpp"

namespace xld::debias {

std::string_view to_string(SpaceTag tag) noexcept {
  return tag == SpaceTag::kLatent ? "latent" : "original";
}

std::optional<SpaceTag> parse_space_tag(std::string_view text) noexcept {
  if (text == "original") return SpaceTag::kOriginal;
  if (text == "latent") return SpaceTag::kLatent;
  return std::nullopt;
}

}  // namespace xld::debias
