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

#include "xld/autoencoder/trainer.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "xld/error.hpp"
#include "xld/numcore/adamw.hpp"
#include "xld/store/pair_dataset.hpp"

namespace xld::autoencoder {
namespace {

// Row indices of one language pair's aligned sentences.
struct ResolvedPairs {
  LanguageId lang_a;
  LanguageId lang_b;
  const Matrix* a = nullptr;
  const Matrix* b = nullptr;
  std::vector<std::size_t> rows_a;
  std::vector<std::size_t> rows_b;
};

std::vector<ResolvedPairs> resolve(const ParallelCorpus& corpus) {
  std::vector<ResolvedPairs> out;
  for (const auto& ps : corpus.pair_sets) {
    auto ia = corpus.sets.find(ps.lang_a);
    auto ib = corpus.sets.find(ps.lang_b);
    if (ia == corpus.sets.end() || ib == corpus.sets.end()) {
      throw DataError("pairs reference language without embeddings: " + ps.lang_a.code() + "-" +
                      ps.lang_b.code());
    }
    std::unordered_map<std::string_view, std::size_t> index_a, index_b;
    for (std::size_t i = 0; i < ia->second.ids.size(); ++i) index_a.emplace(ia->second.ids[i], i);
    for (std::size_t i = 0; i < ib->second.ids.size(); ++i) index_b.emplace(ib->second.ids[i], i);
    ResolvedPairs r{ps.lang_a, ps.lang_b, &ia->second.matrix, &ib->second.matrix, {}, {}};
    for (const auto& [ida, idb] : ps.pairs) {
      auto a = index_a.find(ida);
      auto b = index_b.find(idb);
      if (a == index_a.end() || b == index_b.end()) {
        throw DataError("pair (" + ida + ", " + idb + ") does not resolve");
      }
      r.rows_a.push_back(a->second);
      r.rows_b.push_back(b->second);
    }
    if (!r.rows_a.empty()) out.push_back(std::move(r));
  }
  return out;
}

struct Batch {
  std::size_t pair_set = 0;
  std::vector<std::size_t> members;  // positions within the pair set
};

void accumulate(PairLoss& acc, const PairLoss& batch, double weight) {
  acc.self_x += weight * batch.self_x;
  acc.self_y += weight * batch.self_y;
  acc.cross_x += weight * batch.cross_x;
  acc.cross_y += weight * batch.cross_y;
  acc.total += weight * batch.total;
}

void finish_mean(PairLoss& acc, double count) {
  acc.self_x /= count;
  acc.self_y /= count;
  acc.cross_x /= count;
  acc.cross_y /= count;
  acc.total /= count;
}

// One AdamW state per MLP so that decoders absent from a batch are left
// untouched, as with per-parameter optimizer state.
struct Optimizers {
  numcore::AdamWState encoder;
  std::map<LanguageId, numcore::AdamWState> decoders;
};

void step_mlp(MlpParams& params, const MlpParams& grads, numcore::AdamWState& state) {
  auto p = params.parameters();
  std::vector<Matrix> g;
  g.reserve(grads.layers.size() * 2);
  for (const auto& l : grads.layers) {
    g.push_back(l.weight);
    g.push_back(l.bias);
  }
  numcore::adamw_step(p, g, state);
}

void zero(MlpParams& grads) {
  for (auto& l : grads.layers) {
    l.weight.fill(0.0f);
    l.bias.fill(0.0f);
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ParameterError("epochs must be at least 1");
  if (patience < 1) throw ParameterError("patience must be at least 1");
  if (batch_size < 1) throw ParameterError("batch_size must be at least 1");
  if (latent_dim < 1) throw ParameterError("latent_dim must be at least 1");
  if (!(learning_rate > 0.0f)) throw ParameterError("learning rate must be positive");
}

std::size_t ParallelCorpus::pair_count() const noexcept {
  std::size_t n = 0;
  for (const auto& ps : pair_sets) n += ps.pairs.size();
  return n;
}

ParallelCorpus ParallelCorpus::from_sets(std::vector<store::EmbeddingSet> sets) {
  ParallelCorpus corpus;
  auto dataset = store::build_pair_dataset(std::span<const store::EmbeddingSet>(sets));
  corpus.pair_sets = std::move(dataset.pair_sets);
  for (auto& s : sets) {
    LanguageId lang = s.language;
    corpus.sets.emplace(std::move(lang), std::move(s));
  }
  return corpus;
}

PairLoss evaluate_loss(const AutoencoderModel& model, const ParallelCorpus& corpus,
                       std::size_t batch_size) {
  if (batch_size == 0) throw ParameterError("batch_size must be positive");
  const auto resolved = resolve(corpus);
  PairLoss acc;
  double count = 0.0;
  for (const auto& r : resolved) {
    for (std::size_t start = 0; start < r.rows_a.size(); start += batch_size) {
      const std::size_t end = std::min(r.rows_a.size(), start + batch_size);
      std::span<const std::size_t> ia(r.rows_a.data() + start, end - start);
      std::span<const std::size_t> ib(r.rows_b.data() + start, end - start);
      const PairLoss l = pair_loss(model, numcore::gather_rows(*r.a, ia), r.lang_a,
                                   numcore::gather_rows(*r.b, ib), r.lang_b);
      accumulate(acc, l, static_cast<double>(end - start));
      count += static_cast<double>(end - start);
    }
  }
  if (count == 0.0) throw DataError("corpus has no aligned pairs");
  finish_mean(acc, count);
  return acc;
}

TrainResult train(AutoencoderModel model, const ParallelCorpus& train_corpus,
                  const ParallelCorpus& dev_corpus, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  model.validate();
  const auto train_pairs = resolve(train_corpus);
  std::size_t total = 0;
  for (const auto& r : train_pairs) total += r.rows_a.size();
  if (total == 0) throw DataError("training corpus has no aligned pairs");
  if (dev_corpus.pair_count() == 0) throw DataError("dev corpus has no aligned pairs");
  for (const auto& r : train_pairs) {
    model.decoder(r.lang_a);
    model.decoder(r.lang_b);
  }

  numcore::Rng rng(cfg.seed ^ 0x5f3759dfULL);
  Optimizers opt;
  numcore::AdamWConfig adam;
  adam.learning_rate = cfg.learning_rate;
  adam.weight_decay = cfg.weight_decay;
  opt.encoder.config = adam;
  for (const auto& lang : model.languages()) opt.decoders[lang].config = adam;
  ModelGrads grads = zeros_like(model);

  TrainResult result;
  double best = std::numeric_limits<double>::infinity();
  std::size_t bad_epochs = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<Batch> batches;
    for (std::size_t s = 0; s < train_pairs.size(); ++s) {
      std::vector<std::size_t> order(train_pairs[s].rows_a.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.shuffle(std::span<std::size_t>(order));
      for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
        const std::size_t end = std::min(order.size(), start + cfg.batch_size);
        batches.push_back({s, std::vector<std::size_t>(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                       order.begin() + static_cast<std::ptrdiff_t>(end))});
      }
    }
    rng.shuffle(std::span<Batch>(batches));

    double train_sum = 0.0;
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const auto& batch = batches[b];
      const auto& r = train_pairs[batch.pair_set];
      std::vector<std::size_t> ia, ib;
      ia.reserve(batch.members.size());
      ib.reserve(batch.members.size());
      for (std::size_t m : batch.members) {
        ia.push_back(r.rows_a[m]);
        ib.push_back(r.rows_b[m]);
      }
      zero(grads.encoder);
      zero(grads.decoders.at(r.lang_a));
      zero(grads.decoders.at(r.lang_b));
      PairLoss l;
      try {
        l = pair_loss_backward(model, numcore::gather_rows(*r.a, ia), r.lang_a,
                               numcore::gather_rows(*r.b, ib), r.lang_b, grads);
      } catch (const DivergenceError& e) {
        throw DivergenceError("epoch " + std::to_string(epoch) + " batch " + std::to_string(b + 1) +
                              ": " + e.what());
      }
      if (!std::isfinite(l.total)) {
        throw DivergenceError("non-finite loss at epoch " + std::to_string(epoch) + " batch " +
                              std::to_string(b + 1));
      }
      train_sum += l.total * static_cast<double>(batch.members.size());
      step_mlp(model.encoder, grads.encoder, opt.encoder);
      step_mlp(model.decoders.at(r.lang_a), grads.decoders.at(r.lang_a), opt.decoders.at(r.lang_a));
      if (r.lang_b != r.lang_a) {
        step_mlp(model.decoders.at(r.lang_b), grads.decoders.at(r.lang_b),
                 opt.decoders.at(r.lang_b));
      }
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = train_sum / static_cast<double>(total);
    try {
      record.dev = evaluate_loss(model, dev_corpus, cfg.batch_size);
    } catch (const DivergenceError& e) {
      throw DivergenceError("dev evaluation after epoch " + std::to_string(epoch) + ": " +
                            e.what());
    }
    if (!std::isfinite(record.dev.total)) {
      throw DivergenceError("non-finite dev loss after epoch " + std::to_string(epoch));
    }
    result.history.push_back(record);
    if (on_epoch) on_epoch(record);

    if (record.dev.total < best) {
      best = record.dev.total;
      result.model = model;
      result.best_epoch = epoch;
      bad_epochs = 0;
    } else if (++bad_epochs >= cfg.patience) {
      result.stopped_early = epoch < cfg.epochs;
      break;
    }
  }
  return result;
}

TrainResult train(const ParallelCorpus& train_corpus, const ParallelCorpus& dev_corpus,
                  const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  if (train_corpus.sets.empty()) throw DataError("training corpus has no embedding sets");
  std::vector<LanguageId> languages;
  std::size_t dim = 0;
  for (const auto& [lang, set] : train_corpus.sets) {
    if (dim != 0 && set.dim() != dim) throw DataError("embedding dimensions differ across languages");
    dim = set.dim();
    languages.push_back(lang);
  }
  Architecture arch{dim, cfg.latent_dim, cfg.hidden_dims};
  numcore::Rng rng(cfg.seed);
  return train(init_autoencoder(arch, languages, rng), train_corpus, dev_corpus, cfg, on_epoch);
}

}  // namespace xld::autoencoder
