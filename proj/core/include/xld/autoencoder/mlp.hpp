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

#ifndef XLD_AUTOENCODER_MLP_HPP_
#define XLD_AUTOENCODER_MLP_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "xld/numcore/matrix.hpp"
#include "xld/numcore/rng.hpp"

namespace xld::autoencoder {

using numcore::Matrix;

// y = x·W + b, with W stored in×out and b as a 1×out row.
struct DenseLayer {
  Matrix weight;
  Matrix bias;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Feed-forward stack with ReLU between layers and an identity output.
struct MlpParams {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const;
  std::size_t output_dim() const;
  // Throws ShapeError when consecutive layers do not chain.
  void validate() const;
  std::vector<Matrix*> parameters();
  std::vector<const Matrix*> parameters() const;

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

// Layer widths [in, h1, ..., out]. Weights are Kaiming-uniform over fan-in
// (bound √(6/fan_in)) for layers feeding a ReLU and √(3/fan_in) for the
// output layer; biases start at zero.
MlpParams init_mlp(std::span<const std::size_t> widths, numcore::Rng& rng);

// Activations kept from a forward pass for backpropagation.
struct MlpTrace {
  // inputs[i] is the input of layer i (inputs[0] is the MLP input).
  std::vector<Matrix> inputs;
  // Pre-activation output of each hidden layer, used for the ReLU mask.
  std::vector<Matrix> pre_activations;
};

Matrix mlp_forward(const MlpParams& mlp, const Matrix& x, MlpTrace* trace = nullptr);

// Gradient buffers shaped like an MlpParams.
MlpParams zeros_like(const MlpParams& mlp);

// Backpropagates d(loss)/d(output) through a traced forward pass, adding
// parameter gradients into `grads`. Returns d(loss)/d(input).
Matrix mlp_backward(const MlpParams& mlp, const MlpTrace& trace, const Matrix& grad_output,
                    MlpParams& grads);

}  // namespace xld::autoencoder

#endif  // XLD_AUTOENCODER_MLP_HPP_
