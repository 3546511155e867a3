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

#ifndef XLD_DEBIAS_TRANSFORM_IO_HPP_
#define XLD_DEBIAS_TRANSFORM_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "xld/autoencoder/model.hpp"
#include "xld/debias/inlp.hpp"
#include "xld/debias/sentdebias.hpp"

namespace xld::debias {

using Transform = std::variant<BiasSubspace, ProjectionMatrix>;

// A debiasing transform plus, for latent-space transforms, the autoencoder
// needed to move hidden states in and out of the latent space.
struct TransformBundle {
  Transform transform;
  std::optional<autoencoder::AutoencoderModel> autoencoder;

  SpaceTag space() const;
  std::size_t dim() const;
  store::BiasType bias_type() const;
  const store::LanguageId& fit_language() const;
};

// XLTF layout:
//   "XLTF" | u8 version=1 | u32 header length | UTF-8 JSON header
//   | payload_rows·payload_cols f32 (row-major) | optional XLAE checkpoint
// Header keys: format_version, kind ("subspace" | "projection"), k, d,
// bias_type, space_tag, fit_language, payload_rows, payload_cols,
// autoencoder_bytes, plus iterations_used / probe_accuracies /
// majority_rates for projections and explained_variance for subspaces.
inline constexpr std::string_view kTransformMagic = "XLTF";
inline constexpr std::uint8_t kTransformVersion = 1;

std::string encode_transform(const TransformBundle& bundle);
TransformBundle decode_transform(std::string_view bytes);
void write_transform(const TransformBundle& bundle, const std::filesystem::path& path);
TransformBundle read_transform(const std::filesystem::path& path);

// Applies the transform to representations living in `space`.
Matrix apply(const Transform& transform, const Matrix& h, SpaceTag space);

// Debiases original-space hidden states of language `lang`: directly for
// original-space transforms, and as decode(T(encode(h)), lang) for latent
// ones (requires the bundled autoencoder).
Matrix apply_to_hidden_states(const TransformBundle& bundle, const Matrix& h,
                              const store::LanguageId& lang);

}  // namespace xld::debias

#endif  // XLD_DEBIAS_TRANSFORM_IO_HPP_
