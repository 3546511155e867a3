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

#ifndef XLD_AUTOENCODER_CHECKPOINT_HPP_
#define XLD_AUTOENCODER_CHECKPOINT_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "xld/autoencoder/model.hpp"

namespace xld::autoencoder {

// XLAE layout (little-endian):
//   "XLAE" | u8 version=1 | u32 input_dim | u32 latent_dim
//   | u32 language count | per language: u32 len + code (sorted)
//   | encoder MLP | one decoder MLP per language, same order
// MLP: u32 layer count, then per layer u32 in | u32 out | in·out f32
// weights (row-major) | out f32 biases.
inline constexpr std::string_view kCheckpointMagic = "XLAE";
inline constexpr std::uint8_t kCheckpointVersion = 1;

std::string encode_checkpoint(const AutoencoderModel& model);
AutoencoderModel decode_checkpoint(std::string_view bytes);

void write_checkpoint(const AutoencoderModel& model, const std::filesystem::path& path);
AutoencoderModel read_checkpoint(const std::filesystem::path& path);

}  // namespace xld::autoencoder

#endif  // XLD_AUTOENCODER_CHECKPOINT_HPP_
