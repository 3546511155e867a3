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

#include "cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xld/autoencoder/checkpoint.hpp"
#include "xld/autoencoder/trainer.hpp"
#include "xld/debias/cda.hpp"
#include "xld/debias/inlp.hpp"
#include "xld/debias/probe.hpp"
#include "xld/debias/sentdebias.hpp"
#include "xld/debias/transform_io.hpp"
#include "xld/diag/alignment.hpp"
#include "xld/error.hpp"
#include "xld/eval/report.hpp"
#include "xld/store/annotations_io.hpp"
#include "xld/store/attributes.hpp"
#include "xld/store/binary_io.hpp"
#include "xld/store/embedding_io.hpp"
#include "xld/store/pair_dataset.hpp"
#include "xld/store/scores_io.hpp"
#include "xld/store/workspace.hpp"
#include "xld/synth/worlds.hpp"

namespace xld::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using numcore::Matrix;
using store::LanguageId;

struct Io {
  std::ostream& out;
  std::ostream& err;
};

store::BiasType bias_arg(const std::string& text) {
  const auto t = store::parse_bias_type(text);
  if (!t) throw ParameterError("unknown bias type '" + text + "' (gender, race, religion)");
  return *t;
}

debias::SpaceTag space_arg(const std::string& text) {
  const auto s = debias::parse_space_tag(text);
  if (!s) throw ParameterError("unknown space '" + text + "' (original, latent)");
  return *s;
}

std::string fmt(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  store::write_file_bytes(path, text);
}

autoencoder::AutoencoderModel workspace_model(const store::Workspace& ws) {
  if (!ws.manifest().model) {
    throw DataError("workspace has no trained autoencoder; run train-ae first");
  }
  return autoencoder::read_checkpoint(ws.resolve(ws.manifest().model->path));
}

// Rows of `set` that carry an annotation, with their labels.
std::pair<Matrix, std::vector<std::string>> labelled_rows(
    const store::EmbeddingSet& set, std::span<const store::AttributeAnnotation> annotations) {
  std::map<std::string, const store::AttributeAnnotation*> by_id;
  for (const auto& a : annotations) by_id.emplace(a.id, &a);
  std::vector<std::size_t> rows;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < set.ids.size(); ++i) {
    const auto it = by_id.find(set.ids[i]);
    if (it == by_id.end()) continue;
    rows.push_back(i);
    labels.push_back(it->second->label);
  }
  if (rows.empty()) {
    throw DataError("no " + set.language.code() + " sentence carries an annotation");
  }
  return {numcore::gather_rows(set.matrix, rows), std::move(labels)};
}

store::EmbeddingSet in_space(store::EmbeddingSet set, debias::SpaceTag space,
                             const store::Workspace& ws) {
  if (space == debias::SpaceTag::kLatent) {
    set.matrix = autoencoder::encode(workspace_model(ws), set.matrix);
  }
  return set;
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string workspace;
  std::vector<std::string> embeddings;
  std::string pairs;
  std::string annotations;
  std::string annotations_lang;
  std::vector<std::string> scores;
  std::vector<std::string> eval_pairs;
  std::vector<std::string> attributes;
  bool bundled_attributes = false;
};

int ingest(const IngestArgs& a, bool as_json, Io io) {
  auto ws = store::Workspace::open_or_create(a.workspace);
  std::vector<std::string> warnings;
  json summary;
  summary["workspace"] = a.workspace;

  summary["embeddings"] = json::array();
  std::optional<std::size_t> dim;
  for (const auto& e : ws.manifest().embeddings) dim = dim.value_or(e.cols);
  for (const auto& path : a.embeddings) {
    const auto set = store::read_embeddings(path);
    set.validate();
    if (dim && *dim != set.dim()) {
      throw DataError("'" + path + "' has width " + std::to_string(set.dim()) +
                      " but the workspace holds width " + std::to_string(*dim));
    }
    dim = set.dim();
    const auto& entry = ws.add_embeddings(set);
    summary["embeddings"].push_back({{"language", set.language.code()},
                                     {"split", std::string(store::to_string(set.split))},
                                     {"rows", entry.rows},
                                     {"cols", entry.cols}});
  }
  if (!a.embeddings.empty()) {
    for (const auto split : {store::Split::kTrain, store::Split::kDev, store::Split::kTest}) {
      const auto sets = ws.embeddings(split);
      if (sets.size() < 2) continue;
      const auto pd = store::build_pair_dataset(std::span<const store::EmbeddingSet>(sets));
      for (const auto& ex : pd.exclusions) {
        if (ex.missing_in_a + ex.missing_in_b == 0) continue;
        warnings.push_back(std::string(store::to_string(split)) + " " + ex.lang_a.code() + "-" +
                           ex.lang_b.code() + ": " +
                           std::to_string(ex.missing_in_a + ex.missing_in_b) +
                           " ids lack a parallel partner");
      }
    }
  }
  if (!a.pairs.empty()) {
    const auto manifest = store::read_pair_manifest(a.pairs);
    ws.set_pair_manifest(manifest);
    std::size_t n = 0;
    for (const auto& p : manifest) n += p.pairs.size();
    summary["pairs"] = n;
  }
  if (!a.annotations.empty()) {
    const auto rows = store::read_annotations(a.annotations);
    const LanguageId lang =
        a.annotations_lang.empty() ? LanguageId{} : LanguageId(a.annotations_lang);
    ws.add_annotations(rows, lang);
    summary["annotations"] = rows.size();
  }
  summary["scores"] = json::array();
  for (const auto& path : a.scores) {
    const auto records = store::read_scores(path);
    std::set<std::tuple<std::string, std::string, int, std::string, std::string>> seen;
    std::size_t dupes = 0;
    for (const auto& r : records) {
      eval::parse_condition(r.condition);
      if (!seen.emplace(r.language.code(), std::string(store::to_string(r.bias_type)),
                        r.sample_index, r.condition, r.pair_id)
               .second) {
        ++dupes;
      }
    }
    if (dupes > 0) warnings.push_back(path + ": " + std::to_string(dupes) + " duplicate records");
    const auto& entry = ws.add_scores(records, fs::path(path).stem().string());
    summary["scores"].push_back({{"path", entry.path}, {"records", entry.records}});
  }
  summary["eval_pairs"] = json::array();
  for (const auto& path : a.eval_pairs) {
    const auto pairs = store::read_eval_pairs(path);
    summary["eval_pairs"].push_back({{"path", path}, {"pairs", pairs.size()}});
  }
  std::vector<store::AttributeList> lists;
  if (a.bundled_attributes) {
    for (const auto& lang : store::bundled_languages()) {
      for (const auto type : store::kAllBiasTypes) lists.push_back(store::bundled_attribute_list(lang, type));
    }
  }
  for (const auto& spec : a.attributes) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 3 || parts.size() > 4) {
      throw ParameterError("--attributes expects LANG:TYPE:FILE[:PAIRS], got '" + spec + "'");
    }
    std::optional<fs::path> pairs;
    if (parts.size() == 4) pairs = parts[3];
    lists.push_back(store::read_attribute_list(LanguageId(parts[0]), bias_arg(parts[1]), parts[2], pairs));
  }
  for (const auto& list : lists) ws.add_attributes(list);
  summary["attribute_lists"] = lists.size();
  ws.save();

  summary["warnings"] = warnings;
  for (const auto& w : warnings) io.err << "warning: " << w << "\n";
  if (as_json) {
    io.out << summary.dump(2) << "\n";
  } else {
    io.out << "ingested into " << a.workspace << ": " << a.embeddings.size()
           << " embedding file(s), " << a.scores.size() << " score file(s), " << lists.size()
           << " attribute list(s); " << warnings.size() << " warning(s)\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------- train-ae

struct TrainArgs {
  std::string workspace;
  std::string languages;
  std::size_t latent = autoencoder::kDefaultLatentDim;
  std::vector<std::size_t> hidden = autoencoder::kDefaultHiddenDims;
  std::size_t epochs = 50;
  std::size_t patience = 5;
  float lr = 1e-4f;
  float weight_decay = 0.01f;
  std::size_t batch = 256;
  std::uint64_t seed = 0;
};

autoencoder::ParallelCorpus corpus_for(const store::Workspace& ws, store::Split split,
                                       std::span<const LanguageId> langs) {
  auto sets = ws.embeddings(split, langs);
  if (sets.size() < 2) {
    throw DataError("need embeddings of at least two languages for the " +
                    std::string(store::to_string(split)) + " split");
  }
  if (const auto manifest = ws.pair_manifest()) {
    autoencoder::ParallelCorpus corpus;
    corpus.pair_sets = store::build_pair_dataset(std::span<const store::EmbeddingSet>(sets), *manifest).pair_sets;
    for (auto& s : sets) corpus.sets.emplace(s.language, std::move(s));
    return corpus;
  }
  return autoencoder::ParallelCorpus::from_sets(std::move(sets));
}

int train_ae(const TrainArgs& a, bool as_json, Io io) {
  auto ws = store::Workspace::open(a.workspace);
  std::vector<LanguageId> langs;
  if (!a.languages.empty()) {
    langs = store::parse_language_list(a.languages);
  } else {
    for (const auto& e : ws.manifest().embeddings) {
      if (e.split == store::Split::kTrain) langs.push_back(e.language);
    }
  }
  autoencoder::TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.patience = a.patience;
  cfg.learning_rate = a.lr;
  cfg.weight_decay = a.weight_decay;
  cfg.batch_size = a.batch;
  cfg.seed = a.seed;
  cfg.latent_dim = a.latent;
  cfg.hidden_dims = a.hidden;
  cfg.validate();

  const auto train_corpus = corpus_for(ws, store::Split::kTrain, langs);
  const auto dev_corpus = corpus_for(ws, store::Split::kDev, langs);
  const auto result = autoencoder::train(train_corpus, dev_corpus, cfg, [&](const auto& r) {
    io.err << "epoch " << r.epoch << " train " << fmt(r.train_loss) << " dev " << fmt(r.dev.total)
           << "\n";
  });

  const std::string rel = "model/autoencoder.xlae";
  autoencoder::write_checkpoint(result.model, ws.resolve(rel));
  store::ModelEntry entry;
  entry.path = rel;
  entry.input_dim = result.model.input_dim();
  entry.latent_dim = result.model.latent_dim;
  entry.languages = result.model.languages();
  entry.seed = a.seed;
  entry.best_epoch = result.best_epoch;
  entry.stopped_early = result.stopped_early;
  json history = json::array();
  for (const auto& r : result.history) {
    entry.train_loss.push_back(r.train_loss);
    entry.dev_loss.push_back(r.dev.total);
    history.push_back({{"epoch", r.epoch},
                       {"train_loss", r.train_loss},
                       {"dev_total", r.dev.total},
                       {"dev_self_x", r.dev.self_x},
                       {"dev_self_y", r.dev.self_y},
                       {"dev_cross_y", r.dev.cross_y},
                       {"dev_cross_x", r.dev.cross_x}});
  }
  ws.set_model(entry);
  ws.save();

  if (as_json) {
    io.out << json{{"model", rel},
                   {"history", history},
                   {"best_epoch", result.best_epoch},
                   {"stopped_early", result.stopped_early}}
                  .dump(2)
           << "\n";
  } else {
    io.out << "trained " << result.history.size() << " epoch(s); best epoch "
           << result.best_epoch << (result.stopped_early ? " (stopped early)" : "")
           << "; checkpoint " << ws.resolve(rel).string() << "\n";
  }
  return kExitOk;
}

// ----------------------------------------------------------------- fits

struct FitArgs {
  std::string workspace;
  std::string space = "original";
  std::string bias_type = "gender";
  std::string lang;
  std::string split = "train";
  std::string name;
  std::string grouping = "auto";
  std::size_t k = debias::kDefaultSubspaceRank;
  std::size_t iters = debias::kDefaultInlpIterations;
  double margin = debias::kDefaultStopAccuracyMargin;
  std::uint64_t seed = 0;
};

store::Split split_arg(const std::string& text) {
  const auto s = store::parse_split(text);
  if (!s) throw ParameterError("unknown split '" + text + "'");
  return *s;
}

std::string default_name(const std::string& technique, const FitArgs& a) {
  return a.name.empty() ? technique + "-" + a.space + "-" + a.lang + "-" + a.bias_type : a.name;
}

void record_transform(store::Workspace& ws, const std::string& name,
                      const debias::TransformBundle& bundle) {
  const std::string rel = "transforms/" + name + ".xltf";
  debias::write_transform(bundle, ws.resolve(rel));
  ws.add_transform({name, rel,
                    std::holds_alternative<debias::BiasSubspace>(bundle.transform) ? "subspace"
                                                                                 : "projection",
                    std::string(debias::to_string(bundle.space())), bundle.bias_type(),
                    bundle.fit_language(), bundle.dim()});
  ws.save();
}

int fit_sentdebias(const FitArgs& a, bool as_json, Io io) {
  auto ws = store::Workspace::open(a.workspace);
  const LanguageId lang(a.lang);
  const auto space = space_arg(a.space);
  const auto type = bias_arg(a.bias_type);
  const auto annotations = ws.annotations(lang);
  debias::GroupKind kind = debias::GroupKind::kPerTerm;
  if (a.grouping == "counterfactual") {
    kind = debias::GroupKind::kCounterfactual;
  } else if (a.grouping == "auto") {
    const bool grouped = std::any_of(annotations.begin(), annotations.end(),
                                     [](const auto& r) { return r.group != store::kNoGroup; });
    kind = grouped ? debias::GroupKind::kCounterfactual : debias::GroupKind::kPerTerm;
  } else if (a.grouping != "per-term") {
    throw ParameterError("--grouping must be auto, counterfactual or per-term");
  }
  const auto set = in_space(ws.embeddings(lang, split_arg(a.split)), space, ws);
  const auto groups = debias::group_precomputed(set, annotations, kind);
  const auto subspace = debias::fit_bias_subspace(groups, a.k, type, space, lang);
  const std::string name = default_name("sentdebias", a);
  record_transform(ws, name, {subspace, std::nullopt});

  if (as_json) {
    io.out << json{{"name", name},
                   {"k", subspace.k()},
                   {"dim", subspace.dim()},
                   {"groups", groups.groups.size()},
                   {"explained_variance", subspace.explained_variance}}
                  .dump(2)
           << "\n";
  } else {
    io.out << "fitted " << name << ": k=" << subspace.k() << " over " << groups.groups.size()
           << " group(s), d=" << subspace.dim() << "\n";
  }
  return kExitOk;
}

int fit_inlp(const FitArgs& a, bool as_json, Io io) {
  auto ws = store::Workspace::open(a.workspace);
  const LanguageId lang(a.lang);
  const auto space = space_arg(a.space);
  const auto type = bias_arg(a.bias_type);
  const auto set = in_space(ws.embeddings(lang, split_arg(a.split)), space, ws);
  auto [x, labels] = labelled_rows(set, ws.annotations(lang));
  const auto data = debias::make_probe_dataset(std::move(x), labels);
  debias::InlpOptions options;
  options.iterations = a.iters;
  options.stop_accuracy_margin = a.margin;
  const auto projection = debias::fit_inlp(data, options, a.seed, type, space, lang);
  const std::string name = default_name("inlp", a);
  record_transform(ws, name, {projection, std::nullopt});

  // A fresh probe on the projected data measures what the fit left behind.
  debias::ProbeDataset projected{debias::apply(projection, data.x, space), data.labels};
  const auto check = debias::train_probe(projected, a.seed ^ 0x9e3779b97f4a7c15ULL);
  io.err << "final probe accuracy " << fmt(check.accuracy, 4) << " (majority "
         << fmt(check.majority_rate, 4) << ") after " << projection.iterations_used
         << " iteration(s)\n";
  if (as_json) {
    io.out << json{{"name", name},
                   {"iterations_used", projection.iterations_used},
                   {"probe_accuracies", projection.probe_accuracies},
                   {"majority_rates", projection.majority_rates},
                   {"final_probe_accuracy", check.accuracy},
                   {"final_majority_rate", check.majority_rate}}
                  .dump(2)
           << "\n";
  } else {
    io.out << "fitted " << name << ": " << projection.iterations_used << " iteration(s), d="
           << projection.dim() << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------ export-transform

int export_transform(const std::string& workspace, const std::string& name, const std::string& out,
                     bool as_json, Io io) {
  const auto ws = store::Workspace::open(workspace);
  auto bundle = debias::read_transform(ws.resolve(ws.transform(name).path));
  if (bundle.space() == debias::SpaceTag::kLatent) bundle.autoencoder = workspace_model(ws);
  debias::write_transform(bundle, out);
  const auto bytes = fs::file_size(out);
  if (as_json) {
    io.out << json{{"name", name},
                   {"out", out},
                   {"bytes", bytes},
                   {"space", std::string(debias::to_string(bundle.space()))},
                   {"autoencoder", bundle.autoencoder.has_value()}}
                  .dump(2)
           << "\n";
  } else {
    io.out << "wrote " << out << " (" << bytes << " bytes"
           << (bundle.autoencoder ? ", with autoencoder" : "") << ")\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::vector<std::string> scores;
  std::string workspace;
  double alpha = eval::kDefaultAlpha;
  std::string json_out;
  std::string table_out;
  std::string plot_out;
};

int evaluate(const EvaluateArgs& a, bool as_json, Io io) {
  std::vector<std::string> paths = a.scores;
  if (!a.workspace.empty()) {
    const auto ws = store::Workspace::open(a.workspace);
    for (const auto& s : ws.manifest().scores) paths.push_back(ws.resolve(s.path).string());
  }
  if (paths.empty()) throw ParameterError("evaluate needs --scores or a workspace with scores");
  std::vector<store::PreferenceRecord> records;
  for (const auto& p : paths) {
    auto part = store::read_scores(p);
    records.insert(records.end(), part.begin(), part.end());
  }
  eval::AggregateOptions options;
  options.alpha = a.alpha;
  const auto report = eval::aggregate(records, options);
  const std::string report_json = eval::report_to_json(report);
  const std::string table = eval::render_table(report);
  if (!a.json_out.empty()) write_text(a.json_out, report_json);
  if (!a.table_out.empty()) write_text(a.table_out, table);
  if (!a.plot_out.empty()) write_text(a.plot_out, eval::export_plot_data(report));
  if (!report.missing.empty()) {
    io.err << "warning: " << report.missing.size() << " expected cell(s) have no records\n";
  }
  io.out << (as_json ? report_json : table);
  return kExitOk;
}

// -------------------------------------------------------------- diagnose

struct DiagnoseArgs {
  std::vector<std::string> sets;
  std::string workspace;
  std::string split = "test";
  std::string pairs;
  std::string model;
  bool latent = false;
  std::string plot_out;
};

int diagnose(const DiagnoseArgs& a, bool as_json, Io io) {
  std::vector<store::EmbeddingSet> sets;
  for (const auto& p : a.sets) sets.push_back(store::read_embeddings(p));
  std::optional<store::Workspace> ws;
  if (!a.workspace.empty()) {
    ws = store::Workspace::open(a.workspace);
    if (a.sets.empty()) sets = ws->embeddings(split_arg(a.split));
  }
  if (sets.size() < 2) throw ParameterError("diagnose needs at least two embedding sets");

  std::optional<autoencoder::AutoencoderModel> model;
  if (!a.model.empty()) {
    model = autoencoder::read_checkpoint(a.model);
  } else if (a.latent) {
    if (!ws) throw ParameterError("--latent needs --workspace or --model");
    model = workspace_model(*ws);
  }
  if (model) {
    for (auto& s : sets) s.matrix = autoencoder::encode(*model, s.matrix);
  }

  std::vector<store::ParallelPairSet> pair_sets;
  if (!a.pairs.empty()) {
    pair_sets = store::build_pair_dataset(std::span<const store::EmbeddingSet>(sets),
                                          store::read_pair_manifest(a.pairs))
                    .pair_sets;
  } else if (ws && ws->pair_manifest()) {
    pair_sets = store::build_pair_dataset(std::span<const store::EmbeddingSet>(sets),
                                          *ws->pair_manifest())
                    .pair_sets;
  } else {
    pair_sets = store::build_pair_dataset(std::span<const store::EmbeddingSet>(sets)).pair_sets;
  }
  const auto find = [&](const LanguageId& l) -> const store::EmbeddingSet& {
    for (const auto& s : sets) {
      if (s.language == l) return s;
    }
    throw DataError("no embedding set for '" + l.code() + "'");
  };

  json metrics = json::array();
  std::ostringstream text;
  text << "space: " << (model ? "latent" : "original") << "\n";
  for (const auto& ps : pair_sets) {
    if (ps.pairs.empty()) continue;
    const auto& sa = find(ps.lang_a);
    const auto& sb = find(ps.lang_b);
    const auto ab = diag::retrieval_accuracy(sa, sb, ps);
    const auto ba = diag::retrieval_accuracy(sb, sa, ps);
    const double cosine = diag::mean_parallel_cosine(sa, sb, ps);
    metrics.push_back({{"lang_a", ps.lang_a.code()},
                       {"lang_b", ps.lang_b.code()},
                       {"pairs", ps.pairs.size()},
                       {"retrieval_a_to_b", ab.accuracy},
                       {"retrieval_b_to_a", ba.accuracy},
                       {"tied_queries", ab.tied_queries + ba.tied_queries},
                       {"mean_parallel_cosine", cosine}});
    text << ps.lang_a.code() << "-" << ps.lang_b.code() << ": retrieval " << fmt(ab.accuracy, 4)
         << " / " << fmt(ba.accuracy, 4) << ", mean cosine " << fmt(cosine, 4) << " over "
         << ps.pairs.size() << " pairs\n";
    if (ab.tied_queries + ba.tied_queries > 0) {
      io.err << "warning: " << ps.lang_a.code() << "-" << ps.lang_b.code() << " has "
             << ab.tied_queries + ba.tied_queries << " tied retrieval queries\n";
    }
  }
  if (!a.plot_out.empty()) {
    write_text(a.plot_out, diag::plot_points_csv(diag::project_2d(sets)));
  }
  if (as_json) {
    io.out << json{{"space", model ? "latent" : "original"}, {"pairs", metrics}}.dump(2) << "\n";
  } else {
    io.out << text.str();
  }
  return kExitOk;
}

// ------------------------------------------------------------- synthetic

struct SyntheticArgs {
  std::string preset;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::size_t> train;
  std::optional<std::size_t> dev;
  std::optional<std::size_t> test;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> semantic_dim;
  std::string workspace;
};

int synthetic(const SyntheticArgs& a, bool as_json, Io io) {
  synth::WorldConfig cfg;
  if (a.preset == "offset-langs") {
    cfg = synth::offset_langs_preset(a.seed);
  } else if (a.preset == "planted-bias") {
    cfg = synth::planted_bias_preset(a.seed);
  } else {
    throw ParameterError("unknown preset '" + a.preset + "' (offset-langs, planted-bias)");
  }
  if (a.train) cfg.train = *a.train;
  if (a.dev) cfg.dev = *a.dev;
  if (a.test) cfg.test = *a.test;
  if (a.dim) cfg.embed_dim = *a.dim;
  if (a.semantic_dim) cfg.semantic_dim = *a.semantic_dim;
  const auto world = synth::make_world(cfg);
  const auto files = synth::write_world(world, a.out);
  if (!a.workspace.empty()) {
    auto ws = store::Workspace::open_or_create(a.workspace);
    for (const auto& v : world.languages) {
      ws.add_embeddings(v.train);
      ws.add_embeddings(v.dev);
      ws.add_embeddings(v.test);
    }
    if (!world.annotations.empty()) ws.add_annotations(world.annotations, LanguageId{});
    ws.save();
  }
  if (as_json) {
    json list = json::array();
    for (const auto& f : files) list.push_back(f.string());
    io.out << json{{"preset", a.preset}, {"seed", a.seed}, {"files", list}}.dump(2) << "\n";
  } else {
    io.out << "wrote " << files.size() << " file(s) to " << a.out << "\n";
  }
  return kExitOk;
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case Error::Category::kUsage: return kExitUsage;
    case Error::Category::kData: return kExitData;
    case Error::Category::kNumeric: return kExitNumeric;
  }
  return kExitData;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Io io{out, err};
  CLI::App app{"xld: cross-lingual latent-space debiasing toolkit"};
  app.name("xld");
  app.require_subcommand(1);
  std::function<int()> action;

  const auto add_json = [](CLI::App* sub, bool& flag) {
    sub->add_flag("--json", flag, "Emit a machine-readable JSON report on stdout");
  };
  bool as_json = false;

  IngestArgs ingest_args;
  auto* ing = app.add_subcommand("ingest", "Validate files and index them into a workspace");
  ing->add_option("--workspace", ingest_args.workspace, "Workspace directory")->required();
  ing->add_option("--embeddings", ingest_args.embeddings, "XLEB embedding files");
  ing->add_option("--pairs", ingest_args.pairs, "Parallel-pair manifest TSV");
  ing->add_option("--annotations", ingest_args.annotations, "Annotation TSV (id, label, group)");
  ing->add_option("--annotations-lang", ingest_args.annotations_lang,
                  "Language of the annotations (default: shared by all)");
  ing->add_option("--scores", ingest_args.scores, "Score TSV files");
  ing->add_option("--eval-pairs", ingest_args.eval_pairs, "Evaluation pair TSV files (validated)");
  ing->add_option("--attributes", ingest_args.attributes, "Attribute lists as LANG:TYPE:FILE[:PAIRS]");
  ing->add_flag("--bundled-attributes", ingest_args.bundled_attributes,
                "Copy the built-in attribute lists into the workspace");
  add_json(ing, as_json);
  ing->callback([&] { action = [&] { return ingest(ingest_args, as_json, io); }; });

  TrainArgs train_args;
  auto* tr = app.add_subcommand("train-ae", "Train the cross-lingual autoencoder");
  tr->add_option("--workspace", train_args.workspace, "Workspace directory")->required();
  tr->add_option("--languages", train_args.languages, "Comma-separated languages (default: all)");
  tr->add_option("--latent", train_args.latent, "Latent width")->capture_default_str();
  tr->add_option("--hidden", train_args.hidden, "Hidden widths, encoder order")
      ->delimiter(',')
      ->capture_default_str();
  tr->add_option("--epochs", train_args.epochs, "Maximum epochs")->capture_default_str();
  tr->add_option("--patience", train_args.patience, "Early-stopping patience")->capture_default_str();
  tr->add_option("--lr", train_args.lr, "AdamW learning rate")->capture_default_str();
  tr->add_option("--weight-decay", train_args.weight_decay, "AdamW weight decay")->capture_default_str();
  tr->add_option("--batch", train_args.batch, "Mini-batch size")->capture_default_str();
  tr->add_option("--seed", train_args.seed, "Random seed")->capture_default_str();
  add_json(tr, as_json);
  tr->callback([&] { action = [&] { return train_ae(train_args, as_json, io); }; });

  FitArgs fit_args;
  const auto add_fit_options = [&](CLI::App* sub) {
    sub->add_option("--workspace", fit_args.workspace, "Workspace directory")->required();
    sub->add_option("--space", fit_args.space, "original or latent")->capture_default_str();
    sub->add_option("--bias-type", fit_args.bias_type, "gender, race or religion")->capture_default_str();
    sub->add_option("--lang", fit_args.lang, "Debiasing language")->required();
    sub->add_option("--split", fit_args.split, "Embedding split to fit on")->capture_default_str();
    sub->add_option("--name", fit_args.name, "Transform name in the workspace");
    add_json(sub, as_json);
  };
  auto* sd = app.add_subcommand("fit-sentdebias", "Fit a PCA bias subspace");
  add_fit_options(sd);
  sd->add_option("--k", fit_args.k, "Subspace rank")->capture_default_str();
  sd->add_option("--grouping", fit_args.grouping, "auto, counterfactual or per-term")
      ->capture_default_str();
  sd->callback([&] { action = [&] { return fit_sentdebias(fit_args, as_json, io); }; });
  auto* in = app.add_subcommand("fit-inlp", "Fit an iterative nullspace projection");
  add_fit_options(in);
  in->add_option("--iters", fit_args.iters, "Maximum iterations")->capture_default_str();
  in->add_option("--margin", fit_args.margin, "Stop when accuracy <= majority + margin")
      ->capture_default_str();
  in->add_option("--seed", fit_args.seed, "Random seed")->capture_default_str();
  in->callback([&] { action = [&] { return fit_inlp(fit_args, as_json, io); }; });

  std::string export_workspace, export_name, export_out;
  auto* ex = app.add_subcommand("export-transform", "Write a standalone transform file");
  ex->add_option("--workspace", export_workspace, "Workspace directory")->required();
  ex->add_option("--name", export_name, "Transform name")->required();
  ex->add_option("--out", export_out, "Output XLTF file")->required();
  add_json(ex, as_json);
  ex->callback([&] {
    action = [&] { return export_transform(export_workspace, export_name, export_out, as_json, io); };
  });

  EvaluateArgs eval_args;
  auto* ev = app.add_subcommand("evaluate", "Score records and render the bias report");
  ev->add_option("--scores", eval_args.scores, "Score TSV files");
  ev->add_option("--workspace", eval_args.workspace, "Also read every score file of a workspace");
  ev->add_option("--alpha", eval_args.alpha, "Significance level")->capture_default_str();
  ev->add_option("--json-out", eval_args.json_out, "Write the JSON report here");
  ev->add_option("--table-out", eval_args.table_out, "Write the text table here");
  ev->add_option("--plot-out", eval_args.plot_out, "Write the plot CSV here");
  add_json(ev, as_json);
  ev->callback([&] { action = [&] { return evaluate(eval_args, as_json, io); }; });

  DiagnoseArgs diag_args;
  auto* dg = app.add_subcommand("diagnose", "Cross-lingual alignment metrics");
  dg->add_option("--sets", diag_args.sets, "XLEB embedding files");
  dg->add_option("--workspace", diag_args.workspace, "Workspace directory");
  dg->add_option("--split", diag_args.split, "Workspace split to read")->capture_default_str();
  dg->add_option("--pairs", diag_args.pairs, "Parallel-pair manifest TSV");
  dg->add_option("--model", diag_args.model, "XLAE checkpoint to encode with");
  dg->add_flag("--latent", diag_args.latent, "Encode with the workspace autoencoder");
  dg->add_option("--plot-out", diag_args.plot_out, "Write 2-D PCA coordinates as CSV");
  add_json(dg, as_json);
  dg->callback([&] { action = [&] { return diagnose(diag_args, as_json, io); }; });

  SyntheticArgs syn_args;
  auto* sy = app.add_subcommand("synthetic", "Generate synthetic multilingual fixtures");
  sy->add_option("--preset", syn_args.preset, "offset-langs or planted-bias")->required();
  sy->add_option("--out", syn_args.out, "Output directory")->required();
  sy->add_option("--seed", syn_args.seed, "Random seed")->capture_default_str();
  sy->add_option("--train", syn_args.train, "Training sentences per language");
  sy->add_option("--dev", syn_args.dev, "Dev sentences per language");
  sy->add_option("--test", syn_args.test, "Test sentences per language");
  sy->add_option("--dim", syn_args.dim, "Embedding width");
  sy->add_option("--semantic-dim", syn_args.semantic_dim, "Shared semantic width");
  sy->add_option("--workspace", syn_args.workspace, "Also ingest the fixtures into a workspace");
  add_json(sy, as_json);
  sy->callback([&] { action = [&] { return synthetic(syn_args, as_json, io); }; });

  std::vector<const char*> argv{"xld"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace xld::cli
