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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snnaccel/quant.hpp"
#include "snnaccel/tensor.hpp"

namespace snnaccel {

/// Weights of a grouped convolution: (C_in/g)(C_out/g) g k^2. Throws
/// IndivisibleGroups unless g divides both channel counts.
std::size_t conv_param_count(std::size_t in_channels, std::size_t out_channels,
                             std::size_t groups, std::size_t kernel);

struct ConvGeometry {
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t kernel = 3;
  std::size_t stride = 1;
  std::size_t padding = 1;
  std::size_t groups = 1;

  std::size_t in_per_group() const { return in_channels / groups; }
  std::size_t out_per_group() const { return out_channels / groups; }
  std::size_t taps() const { return kernel * kernel; }
  std::size_t weight_count() const {
    return conv_param_count(in_channels, out_channels, groups, kernel);
  }
  /// Throws IndivisibleGroups or InvalidConfig.
  void validate() const;
  /// Throws ShapeMismatch if the input does not fit.
  Shape3 output_shape(const Shape3& input) const;

  bool operator==(const ConvGeometry&) const = default;
};

enum class LayerRole {
  kEncode,    // real-valued (quantized pixel) input, multiplier PEs
  kMain,      // spike input on the main path
  kShortcut,  // 1x1 residual projection, no activation of its own
};

const char* to_string(LayerRole role);
LayerRole layer_role_from_string(const std::string& s);

/// One fused, quantized convolution layer.
struct ConvLayerSpec {
  std::string name;
  LayerRole role = LayerRole::kMain;
  ConvGeometry geometry;
  Shape3 input_shape;
  /// (out_channels, in_channels/groups, k, k).
  IntTensor weights;
  /// One per output channel, in accumulator scale.
  std::vector<std::int32_t> bias;
  /// Exponent of the input representation: 0 for spikes, the input
  /// quantization exponent for the encoding layer.
  int input_exponent = 0;
  /// Firing threshold in accumulator scale. Ignored for shortcut layers.
  std::int32_t threshold = 0;

  int acc_exponent() const { return weights.params().exponent() + input_exponent; }
  Shape3 output_shape() const { return geometry.output_shape(input_shape); }
  bool is_encoding() const { return role == LayerRole::kEncode; }
  bool is_residual_1x1() const { return role == LayerRole::kShortcut; }
  std::int32_t weight(std::size_t o, std::size_t i, std::size_t ky,
                      std::size_t kx) const {
    const auto k = geometry.kernel;
    return weights[((o * geometry.in_per_group() + i) * k + ky) * k + kx];
  }
  void validate() const;

  bool operator==(const ConvLayerSpec&) const = default;
};

/// Two-conv residual block. Indices refer to NetworkGraph::layers; without a
/// shortcut conv the block input is added directly (identity mapping).
struct ResidualBlock {
  std::size_t conv_a = 0;
  std::size_t conv_b = 0;
  std::optional<std::size_t> shortcut;

  bool operator==(const ResidualBlock&) const = default;
};

/// Classifier after global average pooling. Inputs are per-channel spike
/// counts over pool_area positions, so the bias lives at scale
/// 2^exponent * pool_area.
struct FcLayerSpec {
  std::size_t in_features = 0;
  std::size_t out_features = 0;
  IntTensor weights;  // (out, in)
  std::vector<std::int32_t> bias;
  std::int64_t pool_area = 1;

  void validate() const;
  bool operator==(const FcLayerSpec&) const = default;
};

struct NetworkGraph {
  Shape3 input_shape;
  QuantParams input_params{8, 7};
  /// Layer 0 is the encoding layer; residual blocks follow in order.
  std::vector<ConvLayerSpec> layers;
  std::vector<ResidualBlock> blocks;
  std::optional<FcLayerSpec> fc;

  /// Conv and FC layers, excluding residual shortcut projections.
  std::size_t trainable_weight_layers() const;
  /// Structural checks plus the int32 accumulator bound.
  void validate() const;

  bool operator==(const NetworkGraph&) const = default;
};

struct NetworkConfig {
  std::size_t input_channels = 3;
  std::size_t input_size = 32;
  std::size_t stem_channels = 128;
  std::vector<std::size_t> stage_channels{128, 256};
  std::size_t blocks_per_stage = 2;
  std::size_t groups = 4;
  std::size_t num_classes = 10;
  int bits = 8;
  int input_exponent = 7;

  void validate() const;
};

/// The residual topology with zero weights and default scales. Stage s > 0
/// downsamples by 2 in its first block, which then carries a 1x1 shortcut.
NetworkGraph build_resnet10(const NetworkConfig& cfg = {});

struct ParamCountOptions {
  bool include_bias = false;
};

std::size_t count_params(const NetworkGraph& g, ParamCountOptions opts = {});

struct LayerParamCount {
  std::string name;
  std::size_t standard = 0;  // same layer with groups = 1
  std::size_t grouped = 0;
};

/// Per-layer standard vs. grouped weight counts, FC last.
std::vector<LayerParamCount> param_breakdown(const NetworkGraph& g);

/// Worst-case |accumulator| of a layer before thresholding, including the
/// residual operand when the layer closes a block.
std::int64_t accumulator_bound(const NetworkGraph& g, std::size_t layer);

/// Index of the block whose conv_b is `layer`, if any.
std::optional<std::size_t> block_closed_by(const NetworkGraph& g,
                                           std::size_t layer);

}  // namespace snnaccel
