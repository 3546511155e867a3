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

#include "xld/autoencoder/mlp.hpp"

#include <cmath>

#include "xld/error.hpp"

namespace xld::autoencoder {

std::size_t MlpParams::input_dim() const {
  if (layers.empty()) throw ShapeError("MLP has no layers");
  return layers.front().weight.rows();
}

std::size_t MlpParams::output_dim() const {
  if (layers.empty()) throw ShapeError("MLP has no layers");
  return layers.back().weight.cols();
}

void MlpParams::validate() const {
  if (layers.empty()) throw ShapeError("MLP has no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.bias.rows() != 1 || l.bias.cols() != l.weight.cols()) {
      throw ShapeError("layer " + std::to_string(i) + " bias " + l.bias.shape_string() +
                       " does not match weight " + l.weight.shape_string());
    }
    if (i > 0 && layers[i - 1].weight.cols() != l.weight.rows()) {
      throw ShapeError("layer " + std::to_string(i) + " expects input width " +
                       std::to_string(l.weight.rows()) + " but previous layer emits " +
                       std::to_string(layers[i - 1].weight.cols()));
    }
  }
}

std::vector<Matrix*> MlpParams::parameters() {
  std::vector<Matrix*> out;
  for (auto& l : layers) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

std::vector<const Matrix*> MlpParams::parameters() const {
  std::vector<const Matrix*> out;
  for (const auto& l : layers) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  return out;
}

MlpParams init_mlp(std::span<const std::size_t> widths, numcore::Rng& rng) {
  if (widths.size() < 2) throw ParameterError("an MLP needs at least input and output widths");
  MlpParams mlp;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    const std::size_t in = widths[i];
    const std::size_t out = widths[i + 1];
    if (in == 0 || out == 0) throw ParameterError("MLP layer widths must be positive");
    const bool feeds_relu = i + 2 < widths.size();
    const double bound = std::sqrt((feeds_relu ? 6.0 : 3.0) / static_cast<double>(in));
    DenseLayer layer{Matrix(in, out), Matrix(1, out)};
    for (float& w : layer.weight.values()) w = static_cast<float>(rng.uniform(-bound, bound));
    mlp.layers.push_back(std::move(layer));
  }
  return mlp;
}

Matrix mlp_forward(const MlpParams& mlp, const Matrix& x, MlpTrace* trace) {
  if (x.cols() != mlp.input_dim()) {
    throw ShapeError("MLP expects width " + std::to_string(mlp.input_dim()) + ", got " +
                     x.shape_string());
  }
  if (trace) {
    trace->inputs.clear();
    trace->pre_activations.clear();
  }
  Matrix h = x;
  for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
    const auto& layer = mlp.layers[i];
    Matrix z = numcore::matmul(h, layer.weight);
    numcore::add_row_vector(z, layer.bias);
    if (trace) trace->inputs.push_back(std::move(h));
    if (i + 1 < mlp.layers.size()) {
      if (trace) trace->pre_activations.push_back(z);
      for (float& v : z.values()) v = v > 0.0f ? v : 0.0f;
    }
    h = std::move(z);
  }
  numcore::require_finite(h, "MLP forward pass");
  return h;
}

MlpParams zeros_like(const MlpParams& mlp) {
  MlpParams out;
  for (const auto& l : mlp.layers) {
    out.layers.push_back({Matrix(l.weight.rows(), l.weight.cols()), Matrix(1, l.bias.cols())});
  }
  return out;
}

Matrix mlp_backward(const MlpParams& mlp, const MlpTrace& trace, const Matrix& grad_output,
                    MlpParams& grads) {
  if (trace.inputs.size() != mlp.layers.size()) {
    throw ShapeError("trace does not belong to this MLP");
  }
  Matrix g = grad_output;
  for (std::size_t idx = mlp.layers.size(); idx-- > 0;) {
    const auto& layer = mlp.layers[idx];
    if (idx + 1 < mlp.layers.size()) {
      const Matrix& pre = trace.pre_activations[idx];
      auto gv = g.values();
      auto pv = pre.values();
      for (std::size_t j = 0; j < gv.size(); ++j)
        if (pv[j] <= 0.0f) gv[j] = 0.0f;
    }
    Matrix gw = numcore::matmul_at(trace.inputs[idx], g);
    Matrix gb = numcore::column_sums(g);
    auto& dst = grads.layers[idx];
    for (std::size_t j = 0; j < gw.size(); ++j) dst.weight.values()[j] += gw.values()[j];
    for (std::size_t j = 0; j < gb.size(); ++j) dst.bias.values()[j] += gb.values()[j];
    g = numcore::matmul(g, numcore::transpose(layer.weight));
  }
  return g;
}

}  // namespace xld::autoencoder
