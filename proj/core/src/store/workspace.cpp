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

#include "xld/store/workspace.hpp"

#include <algorithm>
#include <tuple>

#include "json.hpp"
#include "xld/error.hpp"
#include "xld/store/attributes.hpp"
#include "xld/store/binary_io.hpp"
#include "xld/store/embedding_io.hpp"
#include "xld/store/pair_dataset.hpp"
#include "xld/store/scores_io.hpp"

namespace xld::store {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <typename Entry, typename Key>
Entry& upsert(std::vector<Entry>& entries, Entry entry, Key key) {
  const auto k = key(entry);
  auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return key(e) == k; });
  if (it != entries.end()) {
    *it = std::move(entry);
  } else {
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(),
            [&](const Entry& a, const Entry& b) { return key(a) < key(b); });
  return *std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return key(e) == k; });
}

LanguageId lang_from(const json& j) {
  const auto code = j.get<std::string>();
  return code.empty() ? LanguageId{} : LanguageId(code);
}

BiasType bias_from(const json& j) {
  const auto parsed = parse_bias_type(j.get<std::string>());
  if (!parsed) throw FormatError("manifest names unknown bias type", 0);
  return *parsed;
}

std::vector<std::string> codes(const std::vector<LanguageId>& langs) {
  std::vector<std::string> out;
  for (const auto& l : langs) out.push_back(l.code());
  return out;
}

}  // namespace

std::string encode_manifest(const WorkspaceManifest& m) {
  json j;
  j["schema"] = std::string(kWorkspaceSchema);
  j["embeddings"] = json::array();
  for (const auto& e : m.embeddings) {
    j["embeddings"].push_back({{"language", e.language.code()},
                               {"split", std::string(to_string(e.split))},
                               {"path", e.path},
                               {"rows", e.rows},
                               {"cols", e.cols}});
  }
  j["pair_manifest"] = m.pair_manifest ? json(*m.pair_manifest) : json(nullptr);
  j["annotations"] = json::array();
  for (const auto& a : m.annotations) {
    j["annotations"].push_back({{"language", a.language.code()}, {"path", a.path}, {"rows", a.rows}});
  }
  j["scores"] = json::array();
  for (const auto& s : m.scores) j["scores"].push_back({{"path", s.path}, {"records", s.records}});
  j["attributes"] = json::array();
  for (const auto& a : m.attributes) {
    j["attributes"].push_back({{"language", a.language.code()},
                               {"bias_type", std::string(to_string(a.bias_type))},
                               {"path", a.path},
                               {"entries", a.entries}});
  }
  if (m.model) {
    const auto& e = *m.model;
    j["model"] = {{"path", e.path},
                  {"input_dim", e.input_dim},
                  {"latent_dim", e.latent_dim},
                  {"languages", codes(e.languages)},
                  {"seed", e.seed},
                  {"best_epoch", e.best_epoch},
                  {"stopped_early", e.stopped_early},
                  {"train_loss", e.train_loss},
                  {"dev_loss", e.dev_loss}};
  } else {
    j["model"] = nullptr;
  }
  j["transforms"] = json::array();
  for (const auto& t : m.transforms) {
    j["transforms"].push_back({{"name", t.name},
                               {"path", t.path},
                               {"kind", t.kind},
                               {"space", t.space},
                               {"bias_type", std::string(to_string(t.bias_type))},
                               {"fit_language", t.fit_language.code()},
                               {"dim", t.dim}});
  }
  return j.dump(2) + "\n";
}

WorkspaceManifest decode_manifest(std::string_view text) {
  WorkspaceManifest m;
  try {
    const json j = json::parse(text);
    if (j.value("schema", std::string()) != kWorkspaceSchema) {
      throw FormatError("manifest schema is not " + std::string(kWorkspaceSchema), 0);
    }
    for (const auto& e : j.at("embeddings")) {
      const auto split = parse_split(e.at("split").get<std::string>());
      if (!split) throw FormatError("manifest names unknown split", 0);
      m.embeddings.push_back({lang_from(e.at("language")), *split, e.at("path").get<std::string>(),
                              e.at("rows").get<std::size_t>(), e.at("cols").get<std::size_t>()});
    }
    if (!j.at("pair_manifest").is_null()) m.pair_manifest = j.at("pair_manifest").get<std::string>();
    for (const auto& a : j.at("annotations")) {
      m.annotations.push_back({lang_from(a.at("language")), a.at("path").get<std::string>(),
                               a.at("rows").get<std::size_t>()});
    }
    for (const auto& s : j.at("scores")) {
      m.scores.push_back({s.at("path").get<std::string>(), s.at("records").get<std::size_t>()});
    }
    for (const auto& a : j.at("attributes")) {
      m.attributes.push_back({lang_from(a.at("language")), bias_from(a.at("bias_type")),
                              a.at("path").get<std::string>(), a.at("entries").get<std::size_t>()});
    }
    if (const auto& e = j.at("model"); !e.is_null()) {
      ModelEntry me;
      me.path = e.at("path").get<std::string>();
      me.input_dim = e.at("input_dim").get<std::size_t>();
      me.latent_dim = e.at("latent_dim").get<std::size_t>();
      for (const auto& code : e.at("languages")) me.languages.push_back(lang_from(code));
      me.seed = e.at("seed").get<std::uint64_t>();
      me.best_epoch = e.at("best_epoch").get<std::size_t>();
      me.stopped_early = e.at("stopped_early").get<bool>();
      me.train_loss = e.at("train_loss").get<std::vector<double>>();
      me.dev_loss = e.at("dev_loss").get<std::vector<double>>();
      m.model = std::move(me);
    }
    for (const auto& t : j.at("transforms")) {
      m.transforms.push_back({t.at("name").get<std::string>(), t.at("path").get<std::string>(),
                              t.at("kind").get<std::string>(), t.at("space").get<std::string>(),
                              bias_from(t.at("bias_type")), lang_from(t.at("fit_language")),
                              t.at("dim").get<std::size_t>()});
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed workspace manifest: ") + e.what(), 0);
  }
  return m;
}

Workspace Workspace::open(const fs::path& root) {
  const fs::path manifest = root / kManifestName;
  if (!fs::exists(manifest)) {
    throw DataError("'" + root.string() + "' is not a workspace (no " + std::string(kManifestName) + ")");
  }
  Workspace ws(root);
  ws.manifest_ = decode_manifest(read_file_bytes(manifest));
  return ws;
}

Workspace Workspace::open_or_create(const fs::path& root) {
  if (fs::exists(root / kManifestName)) return open(root);
  fs::create_directories(root);
  Workspace ws(root);
  ws.save();
  return ws;
}

const EmbeddingEntry& Workspace::add_embeddings(const EmbeddingSet& set) {
  set.validate();
  const std::string rel =
      "embeddings/" + set.language.code() + "." + std::string(to_string(set.split)) + ".xleb";
  write_embeddings(set, resolve(rel));
  return upsert(manifest_.embeddings,
                EmbeddingEntry{set.language, set.split, rel, set.matrix.rows(), set.matrix.cols()},
                [](const EmbeddingEntry& e) { return std::make_tuple(e.language, e.split); });
}

void Workspace::set_pair_manifest(std::span<const ParallelPairSet> pairs) {
  const std::string rel = "pairs.tsv";
  write_pair_manifest(pairs, resolve(rel));
  manifest_.pair_manifest = rel;
}

const AnnotationEntry& Workspace::add_annotations(std::span<const AttributeAnnotation> rows,
                                                  const LanguageId& language) {
  const std::string rel =
      "annotations/" + (language.empty() ? std::string("shared") : language.code()) + ".tsv";
  write_annotations(rows, resolve(rel));
  return upsert(manifest_.annotations, AnnotationEntry{language, rel, rows.size()},
                [](const AnnotationEntry& e) { return e.language; });
}

const ScoreEntry& Workspace::add_scores(std::span<const PreferenceRecord> records,
                                        const std::string& name) {
  const std::string rel = "scores/" + name + ".tsv";
  write_scores(records, resolve(rel));
  return upsert(manifest_.scores, ScoreEntry{rel, records.size()},
                [](const ScoreEntry& e) { return e.path; });
}

const AttributeEntry& Workspace::add_attributes(const AttributeList& list) {
  list.validate();
  const std::string rel =
      "attributes/" + list.language.code() + "/" + std::string(to_string(list.bias_type)) + ".txt";
  std::optional<fs::path> pairs_path;
  if (list.paired()) {
    pairs_path = resolve("attributes/" + list.language.code() + "/" +
                         std::string(to_string(list.bias_type)) + ".pairs");
  }
  write_attribute_list(list, resolve(rel), pairs_path);
  return upsert(manifest_.attributes,
                AttributeEntry{list.language, list.bias_type, rel, list.entries.size()},
                [](const AttributeEntry& e) { return std::make_tuple(e.language, e.bias_type); });
}

void Workspace::set_model(ModelEntry entry) { manifest_.model = std::move(entry); }

void Workspace::add_transform(TransformEntry entry) {
  upsert(manifest_.transforms, std::move(entry), [](const TransformEntry& e) { return e.name; });
}

std::vector<EmbeddingSet> Workspace::embeddings(Split split,
                                                std::span<const LanguageId> languages) const {
  std::vector<EmbeddingSet> out;
  if (languages.empty()) {
    for (const auto& e : manifest_.embeddings) {
      if (e.split == split) out.push_back(read_embeddings(resolve(e.path)));
    }
    return out;
  }
  for (const auto& lang : languages) out.push_back(embeddings(lang, split));
  return out;
}

EmbeddingSet Workspace::embeddings(const LanguageId& language, Split split) const {
  for (const auto& e : manifest_.embeddings) {
    if (e.language == language && e.split == split) return read_embeddings(resolve(e.path));
  }
  throw DataError("workspace has no " + std::string(to_string(split)) + " embeddings for '" +
                  language.code() + "'");
}

std::optional<std::vector<ParallelPairSet>> Workspace::pair_manifest() const {
  if (!manifest_.pair_manifest) return std::nullopt;
  return read_pair_manifest(resolve(*manifest_.pair_manifest));
}

std::vector<AttributeAnnotation> Workspace::annotations(const LanguageId& language) const {
  const AnnotationEntry* shared = nullptr;
  for (const auto& a : manifest_.annotations) {
    if (a.language == language) return read_annotations(resolve(a.path));
    if (a.language.empty()) shared = &a;
  }
  if (shared == nullptr) {
    throw DataError("workspace has no annotations for '" + language.code() + "'");
  }
  return read_annotations(resolve(shared->path));
}

const TransformEntry& Workspace::transform(const std::string& name) const {
  for (const auto& t : manifest_.transforms) {
    if (t.name == name) return t;
  }
  throw DataError("workspace has no transform named '" + name + "'");
}

void Workspace::save() const { write_file_bytes(root_ / kManifestName, encode_manifest(manifest_)); }

}  // namespace xld::store
