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

#include "xld/debias/transform_io.hpp"

#include "json.hpp"
#include "xld/autoencoder/checkpoint.hpp"
#include "xld/error.hpp"
#include "xld/store/binary_io.hpp"

namespace xld::debias {
namespace {

using nlohmann::json;

template <typename T>
T header_field(const json& header, const char* key, store::ByteReader& r, std::size_t at) {
  try {
    return header.at(key).get<T>();
  } catch (const json::exception&) {
    r.fail(std::string("transform header lacks a valid '") + key + "'", at);
  }
}

}  // namespace

SpaceTag TransformBundle::space() const {
  return std::visit([](const auto& t) { return t.space; }, transform);
}

std::size_t TransformBundle::dim() const {
  return std::visit([](const auto& t) { return t.dim(); }, transform);
}

store::BiasType TransformBundle::bias_type() const {
  return std::visit([](const auto& t) { return t.bias_type; }, transform);
}

const store::LanguageId& TransformBundle::fit_language() const {
  return std::visit([](const auto& t) -> const store::LanguageId& { return t.fit_language; },
                    transform);
}

std::string encode_transform(const TransformBundle& bundle) {
  const Matrix* payload = nullptr;
  json header;
  header["format_version"] = kTransformVersion;
  header["bias_type"] = std::string(store::to_string(bundle.bias_type()));
  header["space_tag"] = std::string(to_string(bundle.space()));
  header["fit_language"] = bundle.fit_language().code();
  header["d"] = bundle.dim();
  if (const auto* s = std::get_if<BiasSubspace>(&bundle.transform)) {
    header["kind"] = "subspace";
    header["k"] = s->k();
    header["explained_variance"] = s->explained_variance;
    payload = &s->directions;
  } else {
    const auto& p = std::get<ProjectionMatrix>(bundle.transform);
    header["kind"] = "projection";
    header["k"] = p.iterations_used;
    header["iterations_used"] = p.iterations_used;
    header["probe_accuracies"] = p.probe_accuracies;
    header["majority_rates"] = p.majority_rates;
    payload = &p.p;
  }
  header["payload_rows"] = payload->rows();
  header["payload_cols"] = payload->cols();

  std::string ae;
  if (bundle.space() == SpaceTag::kLatent && bundle.autoencoder) {
    if (bundle.autoencoder->latent_dim != bundle.dim()) {
      throw ShapeError("latent transform of width " + std::to_string(bundle.dim()) +
                       " bundled with an autoencoder of latent width " +
                       std::to_string(bundle.autoencoder->latent_dim));
    }
    ae = autoencoder::encode_checkpoint(*bundle.autoencoder);
  } else if (bundle.autoencoder) {
    throw ParameterError("only latent-space transforms carry an autoencoder");
  }
  header["autoencoder_bytes"] = ae.size();

  const std::string header_text = header.dump();
  store::ByteWriter w;
  w.put_bytes(kTransformMagic);
  w.put_u8(kTransformVersion);
  w.put_string(header_text);
  w.put_f32s(payload->values());
  w.put_bytes(ae);
  return w.take();
}

TransformBundle decode_transform(std::string_view bytes) {
  store::ByteReader r(bytes);
  r.expect_magic(kTransformMagic);
  const std::size_t version_at = r.offset();
  if (const auto v = r.get_u8("version"); v != kTransformVersion) {
    r.fail("unsupported transform version " + std::to_string(v), version_at);
  }
  const std::size_t header_at = r.offset();
  const std::string header_text = r.get_string("JSON header");
  json header;
  try {
    header = json::parse(header_text);
  } catch (const json::exception& e) {
    r.fail(std::string("malformed JSON header: ") + e.what(), header_at);
  }
  const auto kind = header_field<std::string>(header, "kind", r, header_at);
  const auto rows = header_field<std::size_t>(header, "payload_rows", r, header_at);
  const auto cols = header_field<std::size_t>(header, "payload_cols", r, header_at);
  const auto d = header_field<std::size_t>(header, "d", r, header_at);
  const auto bias = store::parse_bias_type(header_field<std::string>(header, "bias_type", r, header_at));
  const auto space = parse_space_tag(header_field<std::string>(header, "space_tag", r, header_at));
  const auto lang = header_field<std::string>(header, "fit_language", r, header_at);
  const auto ae_bytes = header_field<std::size_t>(header, "autoencoder_bytes", r, header_at);
  if (!bias || !space || !store::LanguageId::is_valid(lang) || cols != d) {
    r.fail("inconsistent transform header", header_at);
  }
  const std::size_t payload_at = r.offset();
  Matrix payload(rows, cols, r.get_f32s(rows * cols, "transform payload"));
  if (!numcore::all_finite(payload)) r.fail("non-finite transform payload", payload_at);

  TransformBundle bundle;
  if (kind == "subspace") {
    const auto k = header_field<std::size_t>(header, "k", r, header_at);
    if (k != rows) r.fail("subspace k does not match payload rows", header_at);
    bundle.transform = BiasSubspace{
        std::move(payload), *bias, *space, store::LanguageId(lang),
        header_field<std::vector<double>>(header, "explained_variance", r, header_at)};
  } else if (kind == "projection") {
    if (rows != cols) r.fail("projection payload must be square", header_at);
    ProjectionMatrix p;
    p.p = std::move(payload);
    p.iterations_used = header_field<std::size_t>(header, "iterations_used", r, header_at);
    p.probe_accuracies = header_field<std::vector<double>>(header, "probe_accuracies", r, header_at);
    p.majority_rates = header_field<std::vector<double>>(header, "majority_rates", r, header_at);
    p.bias_type = *bias;
    p.space = *space;
    p.fit_language = store::LanguageId(lang);
    bundle.transform = std::move(p);
  } else {
    r.fail("unknown transform kind '" + kind + "'", header_at);
  }
  if (ae_bytes > 0) {
    const std::size_t ae_at = r.offset();
    const std::string_view ae = r.get_bytes(ae_bytes, "embedded autoencoder");
    try {
      bundle.autoencoder = autoencoder::decode_checkpoint(ae);
    } catch (const FormatError& e) {
      r.fail(std::string("embedded autoencoder: ") + e.what(), ae_at + e.offset());
    }
    if (bundle.autoencoder->latent_dim != d) r.fail("autoencoder latent width mismatch", ae_at);
  }
  r.expect_end();
  return bundle;
}

void write_transform(const TransformBundle& bundle, const std::filesystem::path& path) {
  store::write_file_bytes(path, encode_transform(bundle));
}

TransformBundle read_transform(const std::filesystem::path& path) {
  return decode_transform(store::read_file_bytes(path));
}

Matrix apply(const Transform& transform, const Matrix& h, SpaceTag space) {
  return std::visit([&](const auto& t) { return apply(t, h, space); }, transform);
}

Matrix apply_to_hidden_states(const TransformBundle& bundle, const Matrix& h,
                              const store::LanguageId& lang) {
  if (bundle.space() == SpaceTag::kOriginal) return apply(bundle.transform, h, SpaceTag::kOriginal);
  if (!bundle.autoencoder) {
    throw ParameterError("latent-space transform has no autoencoder to reach the latent space");
  }
  return autoencoder::latent_round_trip(*bundle.autoencoder, h, lang, [&](const Matrix& z) {
    return apply(bundle.transform, z, SpaceTag::kLatent);
  });
}

}  // namespace xld::debias
