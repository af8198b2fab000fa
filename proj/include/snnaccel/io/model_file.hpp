// Copyright (c) 2026 snnaccel Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "snnaccel/network.hpp"

namespace snnaccel::io {

/// File layout:
///   "SNNQ" | u32 version | u32 manifest length | manifest text | blobs
/// The manifest is line-oriented key=value text describing the input, every
/// layer, the residual blocks and the classifier. Blobs follow in manifest
/// order: per layer the weights (one byte per value up to 8 bits, two
/// bytes above) then one int32 bias per output channel; the FC weights and
/// biases come last. All integers are little-endian.
inline constexpr char kModelMagic[4] = {'S', 'N', 'N', 'Q'};
inline constexpr std::uint32_t kModelVersion = 1;

std::vector<std::uint8_t> save_model(const NetworkGraph& model);

/// Throws CorruptFile on a bad header, a malformed manifest, blob lengths
/// that disagree with the manifest, or a model that fails validation.
NetworkGraph load_model(std::span<const std::uint8_t> bytes);

/// The manifest section alone, as written by save_model.
std::string model_manifest(const NetworkGraph& model);

void write_model_file(const std::string& path, const NetworkGraph& model);
NetworkGraph read_model_file(const std::string& path);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace snnaccel::io
