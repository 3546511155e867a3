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

#include "xld/autoencoder/model.hpp"

#include "xld/error.hpp"

namespace xld::autoencoder {

std::vector<std::size_t> Architecture::encoder_widths() const {
  std::vector<std::size_t> w{input_dim};
  w.insert(w.end(), hidden_dims.begin(), hidden_dims.end());
  w.push_back(latent_dim);
  return w;
}

std::vector<std::size_t> Architecture::decoder_widths() const {
  std::vector<std::size_t> w{latent_dim};
  w.insert(w.end(), hidden_dims.rbegin(), hidden_dims.rend());
  w.push_back(input_dim);
  return w;
}

std::vector<LanguageId> AutoencoderModel::languages() const {
  std::vector<LanguageId> out;
  for (const auto& [lang, _] : decoders) out.push_back(lang);
  return out;
}

const MlpParams& AutoencoderModel::decoder(const LanguageId& lang) const {
  auto it = decoders.find(lang);
  if (it == decoders.end()) throw DataError("no decoder for language '" + lang.code() + "'");
  return it->second;
}

void AutoencoderModel::validate() const {
  encoder.validate();
  if (encoder.output_dim() != latent_dim) {
    throw ShapeError("encoder emits " + std::to_string(encoder.output_dim()) +
                     " dims, latent_dim is " + std::to_string(latent_dim));
  }
  if (decoders.empty()) throw ShapeError("autoencoder has no decoders");
  for (const auto& [lang, dec] : decoders) {
    dec.validate();
    if (dec.input_dim() != latent_dim || dec.output_dim() != encoder.input_dim()) {
      throw ShapeError("decoder '" + lang.code() + "' maps " + std::to_string(dec.input_dim()) +
                       " -> " + std::to_string(dec.output_dim()));
    }
  }
}

AutoencoderModel init_autoencoder(const Architecture& arch, std::span<const LanguageId> languages,
                                  numcore::Rng& rng) {
  if (arch.input_dim == 0 || arch.latent_dim == 0) {
    throw ParameterError("input and latent dimensions must be positive");
  }
  if (arch.hidden_dims.size() > 3) {
    throw ParameterError("at most 3 hidden widths (4 layers) are supported");
  }
  if (languages.empty()) throw ParameterError("autoencoder needs at least one language");
  AutoencoderModel model;
  model.latent_dim = arch.latent_dim;
  const auto enc = arch.encoder_widths();
  const auto dec = arch.decoder_widths();
  model.encoder = init_mlp(enc, rng);
  for (const auto& lang : languages) {
    if (model.decoders.contains(lang)) {
      throw ParameterError("language '" + lang.code() + "' listed twice");
    }
    model.decoders.emplace(lang, init_mlp(dec, rng));
  }
  return model;
}

Matrix encode(const AutoencoderModel& model, const Matrix& x) {
  if (x.cols() != model.input_dim()) {
    throw ShapeError("encode expects " + std::to_string(model.input_dim()) + " columns, got " +
                     x.shape_string());
  }
  return mlp_forward(model.encoder, x);
}

Matrix decode(const AutoencoderModel& model, const Matrix& z, const LanguageId& lang) {
  const MlpParams& dec = model.decoder(lang);
  if (z.cols() != model.latent_dim) {
    throw ShapeError("decode expects " + std::to_string(model.latent_dim) + " columns, got " +
                     z.shape_string());
  }
  return mlp_forward(dec, z);
}

Matrix latent_round_trip(const AutoencoderModel& model, const Matrix& x, const LanguageId& lang,
                         const LatentTransform& transform) {
  model.decoder(lang);
  Matrix z = encode(model, x);
  if (transform) {
    z = transform(z);
    if (z.rows() != x.rows() || z.cols() != model.latent_dim) {
      throw ShapeError("latent transform changed the shape to " + z.shape_string());
    }
  }
  return decode(model, z, lang);
}

}  // namespace xld::autoencoder
