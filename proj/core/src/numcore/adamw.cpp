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

#include "xld/numcore/adamw.hpp"

#include <cmath>

#include "xld/error.hpp"

namespace xld::numcore {

void adamw_step(std::span<Matrix* const> params, std::span<const Matrix> grads,
                AdamWState& state) {
  if (params.size() != grads.size()) {
    throw ShapeError("adamw_step got " + std::to_string(params.size()) + " parameters and " +
                     std::to_string(grads.size()) + " gradients");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i]->same_shape(grads[i])) {
      throw ShapeError("parameter " + std::to_string(i) + " is " + params[i]->shape_string() +
                       " but its gradient is " + grads[i].shape_string());
    }
  }
  if (state.first_moment.empty()) {
    for (Matrix* p : params) {
      state.first_moment.emplace_back(p->rows(), p->cols());
      state.second_moment.emplace_back(p->rows(), p->cols());
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw ShapeError("optimizer state tracks " + std::to_string(state.first_moment.size()) +
                     " tensors, step received " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!state.first_moment[i].same_shape(*params[i])) {
      throw ShapeError("optimizer accumulator " + std::to_string(i) + " shape changed");
    }
  }

  ++state.step;
  const AdamWConfig& c = state.config;
  const double t = static_cast<double>(state.step);
  const float bias1 = static_cast<float>(1.0 - std::pow(static_cast<double>(c.beta1), t));
  const float bias2 = static_cast<float>(1.0 - std::pow(static_cast<double>(c.beta2), t));
  const float decay = 1.0f - c.learning_rate * c.weight_decay;

  for (std::size_t i = 0; i < params.size(); ++i) {
    auto p = params[i]->values();
    auto g = grads[i].values();
    auto m = state.first_moment[i].values();
    auto v = state.second_moment[i].values();
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = c.beta1 * m[j] + (1.0f - c.beta1) * g[j];
      v[j] = c.beta2 * v[j] + (1.0f - c.beta2) * g[j] * g[j];
      const float m_hat = m[j] / bias1;
      const float v_hat = v[j] / bias2;
      p[j] = p[j] * decay - c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace xld::numcore
