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

#ifndef XLD_AUTOENCODER_LOSS_HPP_
#define XLD_AUTOENCODER_LOSS_HPP_

#include <map>

#include "xld/autoencoder/model.hpp"

namespace xld::autoencoder {

// The four reconstruction terms for a parallel batch (x in lang_x, y in
// lang_y). Each is a mean-squared error over all entries.
struct PairLoss {
  double self_x = 0.0;   // x → encoder → lang_x decoder, against x
  double self_y = 0.0;   // y → encoder → lang_y decoder, against y
  double cross_y = 0.0;  // x → encoder → lang_y decoder, against y
  double cross_x = 0.0;  // y → encoder → lang_x decoder, against x
  double total = 0.0;    // sum of the four terms

  double cross() const noexcept { return cross_x + cross_y; }
};

// Gradient buffers for a whole model.
struct ModelGrads {
  MlpParams encoder;
  std::map<LanguageId, MlpParams> decoders;
};

ModelGrads zeros_like(const AutoencoderModel& model);

PairLoss pair_loss(const AutoencoderModel& model, const Matrix& x, const LanguageId& lang_x,
                   const Matrix& y, const LanguageId& lang_y);

// As pair_loss, also accumulating d(total)/d(params) into `grads`.
PairLoss pair_loss_backward(const AutoencoderModel& model, const Matrix& x,
                            const LanguageId& lang_x, const Matrix& y, const LanguageId& lang_y,
                            ModelGrads& grads);

double mean_squared_error(const Matrix& prediction, const Matrix& target);

}  // namespace xld::autoencoder

#endif  // XLD_AUTOENCODER_LOSS_HPP_
