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

#ifndef XLD_AUTOENCODER_TRAINER_HPP_
#define XLD_AUTOENCODER_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "xld/autoencoder/loss.hpp"
#include "xld/autoencoder/model.hpp"
#include "xld/store/types.hpp"

namespace xld::autoencoder {

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t patience = 5;
  float learning_rate = 1e-4f;
  float weight_decay = 0.01f;
  std::size_t batch_size = 256;
  std::uint64_t seed = 0;
  std::size_t latent_dim = kDefaultLatentDim;
  std::vector<std::size_t> hidden_dims = kDefaultHiddenDims;

  // Throws ParameterError when a count is zero.
  void validate() const;
};

// Embedding sets of one split keyed by language, plus the aligned pairs
// between them.
struct ParallelCorpus {
  std::map<LanguageId, store::EmbeddingSet> sets;
  std::vector<store::ParallelPairSet> pair_sets;

  std::size_t pair_count() const noexcept;
  // Builds id-equality pairs over all languages in `sets`.
  static ParallelCorpus from_sets(std::vector<store::EmbeddingSet> sets);
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  PairLoss dev;
};

struct TrainResult {
  AutoencoderModel model;  // best-dev checkpoint
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
};

// Pair-weighted mean of the four-term loss over every aligned pair,
// evaluated in fixed-size batches in corpus order.
PairLoss evaluate_loss(const AutoencoderModel& model, const ParallelCorpus& corpus,
                       std::size_t batch_size);

using EpochCallback = std::function<void(const EpochRecord&)>;

// AdamW over shuffled mini-batches of parallel pairs (one language pair per
// batch, each pair once per epoch). Stops after cfg.epochs, or once the dev
// total loss has not improved for cfg.patience consecutive epochs, and
// returns the weights of the best dev epoch. Throws DataError for an empty
// corpus and DivergenceError on a non-finite loss.
TrainResult train(AutoencoderModel model, const ParallelCorpus& train_corpus,
                  const ParallelCorpus& dev_corpus, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

// Initialises an autoencoder sized for the corpus (languages taken from
// `train_corpus.sets`) from cfg.seed, then trains it.
TrainResult train(const ParallelCorpus& train_corpus, const ParallelCorpus& dev_corpus,
                  const TrainConfig& cfg, const EpochCallback& on_epoch = {});

}  // namespace xld::autoencoder

#endif  // XLD_AUTOENCODER_TRAINER_HPP_
