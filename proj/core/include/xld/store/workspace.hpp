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

#ifndef XLD_STORE_WORKSPACE_HPP_
#define XLD_STORE_WORKSPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xld/store/annotations_io.hpp"
#include "xld/store/types.hpp"

namespace xld::store {

struct EmbeddingEntry {
  LanguageId language;
  Split split = Split::kTrain;
  std::string path;  // relative to the workspace root
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct AnnotationEntry {
  LanguageId language;  // empty when shared by every language
  std::string path;
  std::size_t rows = 0;
};

struct ScoreEntry {
  std::string path;
  std::size_t records = 0;
};

struct AttributeEntry {
  LanguageId language;
  BiasType bias_type = BiasType::kGender;
  std::string path;
  std::size_t entries = 0;
};

struct ModelEntry {
  std::string path;
  std::size_t input_dim = 0;
  std::size_t latent_dim = 0;
  std::vector<LanguageId> languages;
  std::uint64_t seed = 0;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
  std::vector<double> train_loss;
  std::vector<double> dev_loss;
};

struct TransformEntry {
  std::string name;
  std::string path;
  std::string kind;   // "subspace" or "projection"
  std::string space;  // "original" or "latent"
  BiasType bias_type = BiasType::kGender;
  LanguageId fit_language;
  std::size_t dim = 0;
};

struct WorkspaceManifest {
  std::vector<EmbeddingEntry> embeddings;
  std::optional<std::string> pair_manifest;
  std::vector<AnnotationEntry> annotations;
  std::vector<ScoreEntry> scores;
  std::vector<AttributeEntry> attributes;
  std::optional<ModelEntry> model;
  std::vector<TransformEntry> transforms;
};

inline constexpr std::string_view kWorkspaceSchema = "xld.workspace/1";
inline constexpr std::string_view kManifestName = "manifest.json";

std::string encode_manifest(const WorkspaceManifest& manifest);
// Throws FormatError (offset 0) on malformed JSON or a foreign schema.
WorkspaceManifest decode_manifest(std::string_view text);

// A directory of toolkit files indexed by manifest.json. Entries are kept
// sorted so the manifest is a pure function of the workspace contents.
class Workspace {
 public:
  // Throws DataError when `root` holds no manifest.
  static Workspace open(const std::filesystem::path& root);
  static Workspace open_or_create(const std::filesystem::path& root);

  const std::filesystem::path& root() const noexcept { return root_; }
  const WorkspaceManifest& manifest() const noexcept { return manifest_; }
  WorkspaceManifest& manifest() noexcept { return manifest_; }
  std::filesystem::path resolve(const std::string& relative) const { return root_ / relative; }

  // Each add_* writes the file into the workspace (replacing an entry with
  // the same key) and updates the manifest in memory; call save() after.
  const EmbeddingEntry& add_embeddings(const EmbeddingSet& set);
  void set_pair_manifest(std::span<const ParallelPairSet> pairs);
  const AnnotationEntry& add_annotations(std::span<const AttributeAnnotation> rows,
                                         const LanguageId& language);
  const ScoreEntry& add_scores(std::span<const PreferenceRecord> records, const std::string& name);
  const AttributeEntry& add_attributes(const AttributeList& list);
  // Records a file already written under root() as the model checkpoint.
  void set_model(ModelEntry entry);
  void add_transform(TransformEntry entry);

  // Embeddings of one split, in language order; `languages` filters when
  // non-empty. Throws DataError for a requested language with no entry.
  std::vector<EmbeddingSet> embeddings(Split split, std::span<const LanguageId> languages = {}) const;
  EmbeddingSet embeddings(const LanguageId& language, Split split) const;
  std::optional<std::vector<ParallelPairSet>> pair_manifest() const;
  // Language-specific annotations if present, else the shared ones.
  std::vector<AttributeAnnotation> annotations(const LanguageId& language) const;
  const TransformEntry& transform(const std::string& name) const;

  void save() const;

 private:
  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path root_;
  WorkspaceManifest manifest_;
};

}  // namespace xld::store

#endif  // XLD_STORE_WORKSPACE_HPP_
