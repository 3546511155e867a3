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

#ifndef XLD_DEBIAS_PROBE_HPP_
#define XLD_DEBIAS_PROBE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xld/numcore/matrix.hpp"

namespace xld::debias {

using numcore::Matrix;

// Representations with integer protected-attribute labels in [0, classes).
struct ProbeDataset {
  Matrix x;
  std::vector<int> labels;

  std::size_t num_classes() const;
  // Throws DataError unless labels match x, there are at least two classes
  // and every class has at least two examples.
  void validate() const;
};

// Maps string labels to dense class indices (sorted label order).
ProbeDataset make_probe_dataset(Matrix x, std::span<const std::string> labels,
                                std::vector<std::string>* class_names = nullptr);

struct ProbeOptions {
  std::size_t max_steps = 2000;
  float learning_rate = 1e-2f;
  float weight_decay = 0.01f;
  double holdout_fraction = 0.2;
  // Training stops once the loss improves by less than this (relative)
  // over a 50-step window.
  double relative_tolerance = 1e-5;
};

struct ProbeResult {
  // One row for a binary probe, one per class otherwise.
  Matrix weights;
  Matrix bias;
  double accuracy = 0.0;       // on the held-out split
  double majority_rate = 0.0;  // majority-class share of the held-out split
  std::size_t steps = 0;
};

// Logistic regression (sigmoid for two classes, softmax otherwise) trained
// full-batch with AdamW on a stratified 80/20 split drawn from `seed`.
ProbeResult train_probe(const ProbeDataset& data, std::uint64_t seed,
                        const ProbeOptions& options = {});

// Class predicted for each row.
std::vector<int> predict(const ProbeResult& probe, const Matrix& x);

}  // namespace xld::debias

#endif  // XLD_DEBIAS_PROBE_HPP_
