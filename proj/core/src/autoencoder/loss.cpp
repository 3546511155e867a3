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

#include "xld/autoencoder/loss.hpp"

#include "xld/error.hpp"

namespace xld::autoencoder {
namespace {

void check_batch(const AutoencoderModel& model, const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows()) {
    throw ShapeError("parallel batches have " + std::to_string(x.rows()) + " and " +
                     std::to_string(y.rows()) + " rows");
  }
  if (x.rows() == 0) throw ShapeError("empty batch");
  if (x.cols() != model.input_dim() || y.cols() != model.input_dim()) {
    throw ShapeError("batch widths " + x.shape_string() + " / " + y.shape_string() +
                     " do not match model input " + std::to_string(model.input_dim()));
  }
}

// d(MSE)/d(prediction) = 2 (prediction − target) / N
Matrix mse_gradient(const Matrix& prediction, const Matrix& target) {
  Matrix g(prediction.rows(), prediction.cols());
  const float s = 2.0f / static_cast<float>(prediction.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g.values()[i] = s * (prediction.values()[i] - target.values()[i]);
  return g;
}

void add_into(Matrix& dst, const Matrix& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst.values()[i] += src.values()[i];
}

}  // namespace

double mean_squared_error(const Matrix& prediction, const Matrix& target) {
  if (!prediction.same_shape(target)) {
    throw ShapeError("MSE between " + prediction.shape_string() + " and " +
                     target.shape_string());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    const double d = static_cast<double>(prediction.values()[i]) - target.values()[i];
    acc += d * d;
  }
  return acc / static_cast<double>(prediction.size());
}

ModelGrads zeros_like(const AutoencoderModel& model) {
  ModelGrads g;
  g.encoder = autoencoder::zeros_like(model.encoder);
  for (const auto& [lang, dec] : model.decoders) g.decoders.emplace(lang, autoencoder::zeros_like(dec));
  return g;
}

PairLoss pair_loss(const AutoencoderModel& model, const Matrix& x, const LanguageId& lang_x,
                   const Matrix& y, const LanguageId& lang_y) {
  check_batch(model, x, y);
  const MlpParams& dec_x = model.decoder(lang_x);
  const MlpParams& dec_y = model.decoder(lang_y);
  const Matrix zx = mlp_forward(model.encoder, x);
  const Matrix zy = mlp_forward(model.encoder, y);
  PairLoss loss;
  loss.self_x = mean_squared_error(mlp_forward(dec_x, zx), x);
  loss.self_y = mean_squared_error(mlp_forward(dec_y, zy), y);
  loss.cross_y = mean_squared_error(mlp_forward(dec_y, zx), y);
  loss.cross_x = mean_squared_error(mlp_forward(dec_x, zy), x);
  loss.total = loss.self_x + loss.self_y + loss.cross_y + loss.cross_x;
  return loss;
}

PairLoss pair_loss_backward(const AutoencoderModel& model, const Matrix& x,
                            const LanguageId& lang_x, const Matrix& y, const LanguageId& lang_y,
                            ModelGrads& grads) {
  check_batch(model, x, y);
  const MlpParams& dec_x = model.decoder(lang_x);
  const MlpParams& dec_y = model.decoder(lang_y);
  MlpParams& gdec_x = grads.decoders.at(lang_x);
  MlpParams& gdec_y = grads.decoders.at(lang_y);

  MlpTrace enc_x, enc_y;
  const Matrix zx = mlp_forward(model.encoder, x, &enc_x);
  const Matrix zy = mlp_forward(model.encoder, y, &enc_y);

  PairLoss loss;
  Matrix grad_zx(zx.rows(), zx.cols());
  Matrix grad_zy(zy.rows(), zy.cols());

  auto term = [&](const MlpParams& dec, MlpParams& gdec, const Matrix& z, const Matrix& target,
                  Matrix& grad_z) {
    MlpTrace t;
    const Matrix out = mlp_forward(dec, z, &t);
    const double value = mean_squared_error(out, target);
    add_into(grad_z, mlp_backward(dec, t, mse_gradient(out, target), gdec));
    return value;
  };
  loss.self_x = term(dec_x, gdec_x, zx, x, grad_zx);
  loss.cross_y = term(dec_y, gdec_y, zx, y, grad_zx);
  loss.self_y = term(dec_y, gdec_y, zy, y, grad_zy);
  loss.cross_x = term(dec_x, gdec_x, zy, x, grad_zy);
  loss.total = loss.self_x + loss.self_y + loss.cross_y + loss.cross_x;

  mlp_backward(model.encoder, enc_x, grad_zx, grads.encoder);
  mlp_backward(model.encoder, enc_y, grad_zy, grads.encoder);
  return loss;
}

}  // namespace xld::autoencoder
