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

#include "xld/autoencoder/checkpoint.hpp"

#include <cmath>

#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::autoencoder {
namespace {

void put_mlp(store::ByteWriter& w, const MlpParams& mlp) {
  w.put_u32(static_cast<std::uint32_t>(mlp.layers.size()));
  for (const auto& l : mlp.layers) {
    w.put_u32(static_cast<std::uint32_t>(l.weight.rows()));
    w.put_u32(static_cast<std::uint32_t>(l.weight.cols()));
    w.put_f32s(l.weight.values());
    w.put_f32s(l.bias.values());
  }
}

MlpParams get_mlp(store::ByteReader& r) {
  const std::size_t count_at = r.offset();
  const std::uint32_t layers = r.get_u32("layer count");
  if (layers == 0 || layers > 16) r.fail("implausible layer count " + std::to_string(layers), count_at);
  MlpParams mlp;
  for (std::uint32_t i = 0; i < layers; ++i) {
    const std::size_t at = r.offset();
    const std::uint32_t in = r.get_u32("layer input width");
    const std::uint32_t out = r.get_u32("layer output width");
    if (in == 0 || out == 0) r.fail("zero layer width", at);
    if (!mlp.layers.empty() && mlp.layers.back().weight.cols() != in) {
      r.fail("layer widths do not chain", at);
    }
    const std::size_t payload_at = r.offset();
    Matrix weight(in, out, r.get_f32s(static_cast<std::size_t>(in) * out, "layer weights"));
    Matrix bias(1, out, r.get_f32s(out, "layer biases"));
    if (!numcore::all_finite(weight) || !numcore::all_finite(bias)) {
      r.fail("non-finite parameter", payload_at);
    }
    mlp.layers.push_back({std::move(weight), std::move(bias)});
  }
  return mlp;
}

}  // namespace

std::string encode_checkpoint(const AutoencoderModel& model) {
  model.validate();
  store::ByteWriter w;
  w.put_bytes(kCheckpointMagic);
  w.put_u8(kCheckpointVersion);
  w.put_u32(static_cast<std::uint32_t>(model.input_dim()));
  w.put_u32(static_cast<std::uint32_t>(model.latent_dim));
  w.put_u32(static_cast<std::uint32_t>(model.decoders.size()));
  for (const auto& [lang, _] : model.decoders) w.put_string(lang.code());
  put_mlp(w, model.encoder);
  for (const auto& [_, dec] : model.decoders) put_mlp(w, dec);
  return w.take();
}

AutoencoderModel decode_checkpoint(std::string_view bytes) {
  store::ByteReader r(bytes);
  r.expect_magic(kCheckpointMagic);
  const std::size_t version_at = r.offset();
  if (const auto v = r.get_u8("version"); v != kCheckpointVersion) {
    r.fail("unsupported checkpoint version " + std::to_string(v), version_at);
  }
  const std::size_t dims_at = r.offset();
  const std::uint32_t input_dim = r.get_u32("input dimension");
  const std::uint32_t latent_dim = r.get_u32("latent dimension");
  const std::uint32_t lang_count = r.get_u32("language count");
  std::vector<LanguageId> langs;
  for (std::uint32_t i = 0; i < lang_count; ++i) {
    const std::size_t at = r.offset();
    std::string code = r.get_string("language code");
    if (!LanguageId::is_valid(code)) r.fail("invalid language code '" + code + "'", at);
    LanguageId id(std::move(code));
    if (!langs.empty() && !(langs.back() < id)) r.fail("language table not sorted", at);
    langs.push_back(std::move(id));
  }
  AutoencoderModel model;
  model.latent_dim = latent_dim;
  model.encoder = get_mlp(r);
  for (auto& lang : langs) model.decoders.emplace(std::move(lang), get_mlp(r));
  r.expect_end();
  try {
    model.validate();
    if (model.input_dim() != input_dim) throw ShapeError("input dimension mismatch");
  } catch (const ShapeError& e) {
    r.fail(e.what(), dims_at);
  }
  return model;
}

void write_checkpoint(const AutoencoderModel& model, const std::filesystem::path& path) {
  store::write_file_bytes(path, encode_checkpoint(model));
}

AutoencoderModel read_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(store::read_file_bytes(path));
}

}  // namespace xld::autoencoder
