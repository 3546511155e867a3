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

#ifndef XLD_AUTOENCODER_MODEL_HPP_
#define XLD_AUTOENCODER_MODEL_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "xld/autoencoder/mlp.hpp"
#include "xld/store/types.hpp"

namespace xld::autoencoder {

using store::LanguageId;

inline constexpr std::size_t kDefaultLatentDim = 128;
inline const std::vector<std::size_t> kDefaultHiddenDims = {512, 256};

// Encoder widths are [input, hidden..., latent]; decoders mirror them as
// [latent, reversed hidden..., input]. hidden_dims.size() + 1 layers per MLP,
// so 0–3 hidden widths give the 1–4 layer variants.
struct Architecture {
  std::size_t input_dim = 0;
  std::size_t latent_dim = kDefaultLatentDim;
  std::vector<std::size_t> hidden_dims = kDefaultHiddenDims;

  std::vector<std::size_t> encoder_widths() const;
  std::vector<std::size_t> decoder_widths() const;
};

// Shared encoder into the latent space plus one decoder per language.
struct AutoencoderModel {
  MlpParams encoder;
  std::map<LanguageId, MlpParams> decoders;
  std::size_t latent_dim = 0;

  std::size_t input_dim() const { return encoder.input_dim(); }
  std::vector<LanguageId> languages() const;
  const MlpParams& decoder(const LanguageId& lang) const;
  // Throws ShapeError if any MLP disagrees with input_dim/latent_dim.
  void validate() const;

  friend bool operator==(const AutoencoderModel&, const AutoencoderModel&) = default;
};

AutoencoderModel init_autoencoder(const Architecture& arch, std::span<const LanguageId> languages,
                                  numcore::Rng& rng);

// n×d → n×latent through the shared encoder.
Matrix encode(const AutoencoderModel& model, const Matrix& x);
// n×latent → n×d through the decoder of `lang`; throws DataError for an
// unknown language.
Matrix decode(const AutoencoderModel& model, const Matrix& z, const LanguageId& lang);

using LatentTransform = std::function<Matrix(const Matrix&)>;

// decode(transform(encode(x)), lang). An empty transform is the identity.
Matrix latent_round_trip(const AutoencoderModel& model, const Matrix& x, const LanguageId& lang,
                         const LatentTransform& transform = {});

}  // namespace xld::autoencoder

#endif  // XLD_AUTOENCODER_MODEL_HPP_
