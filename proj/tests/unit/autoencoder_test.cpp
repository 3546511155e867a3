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

#include <gtest/gtest.h>

#include <cmath>

#include "support/pair_loss_check.hpp"
#include "support/test_support.hpp"
#include "xld/autoencoder/checkpoint.hpp"
#include "xld/autoencoder/loss.hpp"
#include "xld/autoencoder/trainer.hpp"
#include "xld/error.hpp"
#include "xld/numcore/grad_check.hpp"
#include "xld/synth/worlds.hpp"

namespace xld::autoencoder {
namespace {

using numcore::Matrix;
using xld::testing::random_matrix;

const LanguageId kEn("en");
const LanguageId kFr("fr");

AutoencoderModel small_model(std::uint64_t seed, std::size_t d = 6, std::size_t latent = 3,
                             std::vector<std::size_t> hidden = {5, 4}) {
  numcore::Rng rng(seed);
  const LanguageId langs[] = {kEn, kFr};
  return init_autoencoder({d, latent, std::move(hidden)}, langs, rng);
}

// relu(x·W + b) through every layer but the last, written with plain loops.
Matrix reference_forward(const MlpParams& mlp, const Matrix& x) {
  Matrix h = x;
  for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
    const auto& layer = mlp.layers[l];
    Matrix out(h.rows(), layer.weight.cols());
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j) {
        double acc = layer.bias(0, j);
        for (std::size_t k = 0; k < h.cols(); ++k) acc += double(h(i, k)) * layer.weight(k, j);
        out(i, j) = static_cast<float>(l + 1 < mlp.layers.size() ? std::max(acc, 0.0) : acc);
      }
    h = std::move(out);
  }
  return h;
}

TEST(Mlp, InitialisationBounds) {
  numcore::Rng rng(1);
  const std::size_t widths[] = {40, 30, 20};
  const MlpParams mlp = init_mlp(widths, rng);
  ASSERT_EQ(mlp.layers.size(), 2u);
  EXPECT_LE(numcore::max_abs(mlp.layers[0].weight), std::sqrt(6.0 / 40));
  EXPECT_GT(numcore::max_abs(mlp.layers[0].weight), 0.8 * std::sqrt(6.0 / 40));
  EXPECT_LE(numcore::max_abs(mlp.layers[1].weight), std::sqrt(3.0 / 30));
  EXPECT_EQ(numcore::max_abs(mlp.layers[0].bias), 0.0);
  EXPECT_EQ(numcore::max_abs(mlp.layers[1].bias), 0.0);
}

TEST(Mlp, ForwardMatchesReference) {
  numcore::Rng rng(2);
  const std::size_t widths[] = {7, 9, 5, 3};
  MlpParams mlp = init_mlp(widths, rng);
  for (auto& layer : mlp.layers) layer.bias = random_matrix(1, layer.bias.cols(), 3, 0.1);
  const Matrix x = random_matrix(11, 7, 4);
  EXPECT_LT(numcore::max_abs_diff(mlp_forward(mlp, x), reference_forward(mlp, x)), 1e-5);
}

TEST(Mlp, InputGradientPassesFiniteDifferences) {
  numcore::Rng rng(5);
  const std::size_t widths[] = {4, 6, 3};
  const MlpParams mlp = init_mlp(widths, rng);
  const Matrix x = random_matrix(3, 4, 6);
  const Matrix target = random_matrix(3, 3, 7);
  MlpTrace trace;
  const Matrix y = mlp_forward(mlp, x, &trace);
  // d/dy of ½‖y − t‖² is y − t.
  MlpParams grads = zeros_like(mlp);
  const Matrix dx = mlp_backward(mlp, trace, numcore::subtract(y, target), grads);
  const numcore::ScalarObjective f = [&](std::span<const Matrix> p) {
    const Matrix d = numcore::subtract(mlp_forward(mlp, p[0]), target);
    double s = 0.0;
    for (float v : d.values()) s += 0.5 * double(v) * v;
    return s;
  };
  const auto r = numcore::grad_check(f, std::span<const Matrix>(&x, 1), std::span<const Matrix>(&dx, 1));
  EXPECT_LT(r.max_relative_error, 1e-2);
}

TEST(Loss, MeanSquaredErrorByHand) {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_rows({{1, 0}, {0, 4}});
  EXPECT_DOUBLE_EQ(mean_squared_error(a, b), (0.0 + 4.0 + 9.0 + 0.0) / 4.0);
  EXPECT_THROW(mean_squared_error(a, Matrix(1, 2)), ShapeError);
}

TEST(Loss, FourTermsComposeEncodeDecode) {
  const AutoencoderModel model = small_model(8);
  const Matrix x = random_matrix(5, 6, 9);
  const Matrix y = random_matrix(5, 6, 10);
  const PairLoss l = pair_loss(model, x, kEn, y, kFr);
  EXPECT_NEAR(l.self_x, mean_squared_error(decode(model, encode(model, x), kEn), x), 1e-6);
  EXPECT_NEAR(l.self_y, mean_squared_error(decode(model, encode(model, y), kFr), y), 1e-6);
  EXPECT_NEAR(l.cross_y, mean_squared_error(decode(model, encode(model, x), kFr), y), 1e-6);
  EXPECT_NEAR(l.cross_x, mean_squared_error(decode(model, encode(model, y), kEn), x), 1e-6);
  EXPECT_NEAR(l.total, l.self_x + l.self_y + l.cross_x + l.cross_y, 1e-9);
}

// Parameter tensors of model and gradients in one matching order.
TEST(Loss, PairLossGradientsPassFiniteDifferences) {
  AutoencoderModel model = small_model(11);
  for (Matrix* p : xld::testing::model_parameters(model)) {
    if (p->rows() == 1) *p = random_matrix(1, p->cols(), p->cols(), 0.1);
  }
  const auto r = xld::testing::check_pair_loss_gradients(model, random_matrix(8, 6, 12), kEn,
                                                         random_matrix(8, 6, 13), kFr);
  EXPECT_LT(r.max_relative_error, 1e-2);
  EXPECT_GT(r.checked, 4 * r.kink_adjacent);
}

TEST(Loss, ZeroBiasKinkIsSkippedNotMisreported) {
  // With zero biases a fully dead layer leaves the next pre-activation at
  // exactly 0, where central differences see half the one-sided slope.
  for (std::uint64_t seed = 5; seed < 10; ++seed) {
    const AutoencoderModel model = small_model(seed);
    const auto r = xld::testing::check_pair_loss_gradients(model, random_matrix(8, 6, seed + 1),
                                                           kEn, random_matrix(8, 6, seed + 2), kFr);
    EXPECT_LT(r.max_relative_error, 1e-2) << "seed " << seed;
  }
}

TEST(Model, DecodeUnknownLanguageIsDataError) {
  const AutoencoderModel model = small_model(14);
  EXPECT_THROW(decode(model, Matrix(1, 3), LanguageId("de")), DataError);
  EXPECT_THROW(encode(model, Matrix(1, 5)), ShapeError);
}

TEST(Model, RoundTripWithoutTransformIsDecodeOfEncode) {
  const AutoencoderModel model = small_model(15);
  const Matrix x = random_matrix(4, 6, 16);
  EXPECT_EQ(latent_round_trip(model, x, kFr), decode(model, encode(model, x), kFr));
  const Matrix zeroed = latent_round_trip(model, x, kFr, [](const Matrix& z) {
    return Matrix(z.rows(), z.cols());
  });
  EXPECT_EQ(zeroed, decode(model, Matrix(4, 3), kFr));
}

TEST(Checkpoint, RoundTripIsByteExact) {
  const AutoencoderModel model = small_model(17, 10, 4, {8});
  const std::string bytes = encode_checkpoint(model);
  const AutoencoderModel back = decode_checkpoint(bytes);
  EXPECT_EQ(back, model);
  EXPECT_EQ(encode_checkpoint(back), bytes);
  EXPECT_THROW(decode_checkpoint(bytes.substr(0, bytes.size() / 2)), FormatError);
  EXPECT_THROW(decode_checkpoint("XLAE"), FormatError);
}

struct TinyCorpus {
  ParallelCorpus train, dev;
};

TinyCorpus tiny_corpus(std::uint64_t seed) {
  synth::WorldConfig cfg;
  cfg.languages = {kEn, kFr};
  cfg.semantic_dim = 3;
  cfg.embed_dim = 6;
  cfg.train = 60;
  cfg.dev = 20;
  cfg.test = 1;
  cfg.offset_scale = 1.0;
  cfg.seed = seed;
  const auto world = synth::make_world(cfg);
  return {ParallelCorpus::from_sets(world.split(store::Split::kTrain)),
          ParallelCorpus::from_sets(world.split(store::Split::kDev))};
}

TrainConfig tiny_config() {
  TrainConfig cfg;
  cfg.latent_dim = 3;
  cfg.hidden_dims = {8};
  cfg.batch_size = 16;
  cfg.learning_rate = 1e-2f;
  cfg.seed = 3;
  return cfg;
}

TEST(Trainer, SameSeedGivesIdenticalCheckpoint) {
  const auto corpus = tiny_corpus(1);
  TrainConfig cfg = tiny_config();
  cfg.epochs = 4;
  const auto a = train(corpus.train, corpus.dev, cfg);
  const auto b = train(corpus.train, corpus.dev, cfg);
  EXPECT_EQ(encode_checkpoint(a.model), encode_checkpoint(b.model));
  cfg.seed = 4;
  EXPECT_NE(encode_checkpoint(train(corpus.train, corpus.dev, cfg).model),
            encode_checkpoint(a.model));
}

TEST(Trainer, LossDecreasesAndHistoryMatchesEpochs) {
  const auto corpus = tiny_corpus(2);
  TrainConfig cfg = tiny_config();
  cfg.epochs = 30;
  cfg.patience = 30;
  std::size_t callbacks = 0;
  const auto r = train(corpus.train, corpus.dev, cfg, [&](const EpochRecord&) { ++callbacks; });
  ASSERT_EQ(r.history.size(), 30u);
  EXPECT_EQ(callbacks, 30u);
  EXPECT_LT(r.history.back().dev.total, 0.5 * r.history.front().dev.total);
  // The returned weights are the best dev epoch's.
  EXPECT_NEAR(evaluate_loss(r.model, corpus.dev, cfg.batch_size).total,
              r.history[r.best_epoch - 1].dev.total, 1e-6);
}

TEST(Trainer, OneEpochGivesOneRecord) {
  const auto corpus = tiny_corpus(3);
  TrainConfig cfg = tiny_config();
  cfg.epochs = 1;
  EXPECT_EQ(train(corpus.train, corpus.dev, cfg).history.size(), 1u);
}

TEST(Trainer, EarlyStoppingHonoursPatience) {
  const auto corpus = tiny_corpus(4);
  TrainConfig cfg = tiny_config();
  // Steps far below float resolution leave the weights unchanged, so the dev
  // loss never improves after the first epoch.
  cfg.learning_rate = 1e-30f;
  cfg.epochs = 50;
  cfg.patience = 5;
  const auto r = train(corpus.train, corpus.dev, cfg);
  EXPECT_TRUE(r.stopped_early);
  EXPECT_EQ(r.history.size(), 6u);
  EXPECT_EQ(r.best_epoch, 1u);
}

TEST(Trainer, RejectsInvalidConfigAndEmptyCorpus) {
  TrainConfig cfg = tiny_config();
  cfg.batch_size = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  ParallelCorpus empty;
  EXPECT_THROW(train(empty, empty, tiny_config()), DataError);
}

}  // namespace
}  // namespace xld::autoencoder
