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

#include "xld/debias/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "xld/error.hpp"
#include "xld/numcore/adamw.hpp"
#include "xld/numcore/rng.hpp"

namespace xld::debias {
namespace {

constexpr std::size_t kConvergenceWindow = 50;

Matrix logits(const Matrix& w, const Matrix& b, const Matrix& x) {
  Matrix z = numcore::matmul_bt(x, w);
  numcore::add_row_vector(z, b);
  return z;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Mean cross-entropy and its gradients with respect to logits.
double loss_and_grad(const Matrix& z, std::span<const int> labels, bool binary, Matrix& grad) {
  const double n = static_cast<double>(z.rows());
  double loss = 0.0;
  grad = Matrix(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    if (binary) {
      const double logit = z(i, 0);
      const double y = labels[i] == 1 ? 1.0 : 0.0;
      // log(1 + e^{-|z|}) formulation keeps the loss finite for large logits.
      loss += std::max(logit, 0.0) - logit * y + std::log1p(std::exp(-std::fabs(logit)));
      grad(i, 0) = static_cast<float>((sigmoid(logit) - y) / n);
    } else {
      double mx = z(i, 0);
      for (std::size_t c = 1; c < z.cols(); ++c) mx = std::max(mx, static_cast<double>(z(i, c)));
      double sum = 0.0;
      for (std::size_t c = 0; c < z.cols(); ++c) sum += std::exp(z(i, c) - mx);
      const double log_sum = mx + std::log(sum);
      loss += log_sum - z(i, static_cast<std::size_t>(labels[i]));
      for (std::size_t c = 0; c < z.cols(); ++c) {
        const double p = std::exp(z(i, c) - log_sum);
        grad(i, c) = static_cast<float>((p - (static_cast<std::size_t>(labels[i]) == c ? 1.0 : 0.0)) / n);
      }
    }
  }
  return loss / n;
}

}  // namespace

std::size_t ProbeDataset::num_classes() const {
  int mx = -1;
  for (int l : labels) mx = std::max(mx, l);
  return static_cast<std::size_t>(mx + 1);
}

void ProbeDataset::validate() const {
  if (labels.size() != x.rows()) {
    throw DataError("probe data has " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(x.rows()) + " rows");
  }
  std::map<int, std::size_t> counts;
  for (int l : labels) {
    if (l < 0) throw DataError("negative class label");
    ++counts[l];
  }
  if (counts.size() < 2) throw DataError("degenerate labels: probe data needs at least 2 classes");
  for (const auto& [label, count] : counts) {
    if (count < 2) {
      throw DataError("class " + std::to_string(label) + " has " + std::to_string(count) +
                      " example(s), need at least 2");
    }
  }
  if (counts.size() != num_classes()) throw DataError("class labels are not contiguous");
}

ProbeDataset make_probe_dataset(Matrix x, std::span<const std::string> labels,
                                std::vector<std::string>* class_names) {
  std::map<std::string, int> index;
  for (const auto& l : labels) index.emplace(l, 0);
  int next = 0;
  for (auto& [name, id] : index) id = next++;
  ProbeDataset data{std::move(x), {}};
  data.labels.reserve(labels.size());
  for (const auto& l : labels) data.labels.push_back(index.at(l));
  if (class_names) {
    class_names->clear();
    for (const auto& [name, id] : index) class_names->push_back(name);
  }
  data.validate();
  return data;
}

ProbeResult train_probe(const ProbeDataset& data, std::uint64_t seed,
                        const ProbeOptions& options) {
  data.validate();
  const std::size_t classes = data.num_classes();
  const bool binary = classes == 2;
  const std::size_t out_rows = binary ? 1 : classes;

  // Stratified split: every class keeps at least one example on each side.
  numcore::Rng rng(seed);
  std::vector<std::vector<std::size_t>> by_class(classes);
  for (std::size_t i = 0; i < data.labels.size(); ++i)
    by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);
  std::vector<std::size_t> train_idx, test_idx;
  for (auto& members : by_class) {
    rng.shuffle(std::span<std::size_t>(members));
    std::size_t held = static_cast<std::size_t>(
        std::llround(options.holdout_fraction * static_cast<double>(members.size())));
    held = std::clamp<std::size_t>(held, 1, members.size() - 1);
    test_idx.insert(test_idx.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(held));
    train_idx.insert(train_idx.end(), members.begin() + static_cast<std::ptrdiff_t>(held), members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  const Matrix x_train = numcore::gather_rows(data.x, train_idx);
  std::vector<int> y_train;
  for (std::size_t i : train_idx) y_train.push_back(data.labels[i]);

  ProbeResult probe;
  probe.weights = Matrix(out_rows, data.x.cols());
  probe.bias = Matrix(1, out_rows);
  numcore::AdamWState state;
  state.config.learning_rate = options.learning_rate;
  state.config.weight_decay = options.weight_decay;
  std::vector<Matrix*> params{&probe.weights, &probe.bias};

  double window_start_loss = 0.0;
  Matrix grad_logits;
  for (std::size_t step = 0; step < options.max_steps; ++step) {
    const Matrix z = logits(probe.weights, probe.bias, x_train);
    const double loss = loss_and_grad(z, y_train, binary, grad_logits);
    if (!std::isfinite(loss)) throw DivergenceError("probe loss became non-finite");
    if (step % kConvergenceWindow == 0) {
      if (step > 0 && window_start_loss - loss <= options.relative_tolerance * std::fabs(window_start_loss)) {
        probe.steps = step;
        break;
      }
      window_start_loss = loss;
    }
    std::vector<Matrix> grads{numcore::matmul_at(grad_logits, x_train),
                              numcore::column_sums(grad_logits)};
    numcore::adamw_step(params, grads, state);
    probe.steps = step + 1;
  }

  const Matrix x_test = numcore::gather_rows(data.x, test_idx);
  const auto predicted = predict(probe, x_test);
  std::vector<std::size_t> test_counts(classes, 0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_idx.size(); ++i) {
    const int truth = data.labels[test_idx[i]];
    ++test_counts[static_cast<std::size_t>(truth)];
    if (predicted[i] == truth) ++correct;
  }
  const double n_test = static_cast<double>(test_idx.size());
  probe.accuracy = static_cast<double>(correct) / n_test;
  probe.majority_rate =
      static_cast<double>(*std::max_element(test_counts.begin(), test_counts.end())) / n_test;
  return probe;
}

std::vector<int> predict(const ProbeResult& probe, const Matrix& x) {
  const Matrix z = logits(probe.weights, probe.bias, x);
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (z.cols() == 1) {
      out[i] = z(i, 0) > 0.0f ? 1 : 0;
    } else {
      std::size_t best = 0;
      for (std::size_t c = 1; c < z.cols(); ++c)
        if (z(i, c) > z(i, best)) best = c;
      out[i] = static_cast<int>(best);
    }
  }
  return out;
}

}  // namespace xld::debias
