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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "snnaccel/batchnorm.hpp"
#include "snnaccel/golden.hpp"
#include "snnaccel/network.hpp"

namespace snnaccel {

/// Real-valued convolution layer as trained: weights, bias, optional
/// per-output-channel BN, and a firing threshold U_th.
struct RealConvLayer {
  std::string name;
  LayerRole role = LayerRole::kMain;
  ConvGeometry geometry;
  Shape3 input_shape;
  std::vector<double> weights;  // (out, in/g, k, k)
  std::vector<double> bias;
  /// Empty once fused.
  std::vector<BnParams> bn;
  double threshold = 1.0;

  bool operator==(const RealConvLayer&) const = default;
};

struct RealFcLayer {
  std::size_t in_features = 0;
  std::size_t out_features = 0;
  std::vector<double> weights;  // (out, in)
  std::vector<double> bias;

  bool operator==(const RealFcLayer&) const = default;
};

struct RealNetwork {
  Shape3 input_shape;
  /// Largest real input value; pixels map to byte / 255.
  double input_max = 1.0;
  std::vector<RealConvLayer> layers;
  std::vector<ResidualBlock> blocks;
  std::optional<RealFcLayer> fc;

  bool fused() const;
  void validate() const;

  bool operator==(const RealNetwork&) const = default;
};

/// Same topology as `topology`, zero weights, identity BN, U_th = 1.
RealNetwork real_network_like(const NetworkGraph& topology);

/// Seeded random weights and BN statistics scaled so spike activity stays
/// away from all-zero and all-one.
RealNetwork random_real_network(const NetworkConfig& cfg, std::uint64_t seed);

/// Folds every layer's BN into its weights and bias.
RealNetwork fuse_network(const RealNetwork& net);

/// Per-tensor symmetric power-of-two quantization of a fused network.
/// Biases and thresholds land in each layer's accumulator scale; the two
/// operands of every residual add share one scale. Weights use `bits`; the
/// input image is always quantized to kInputBits.
inline constexpr int kInputBits = 8;
NetworkGraph quantize_network(const RealNetwork& fused, int bits);

/// random_real_network -> fuse_network -> quantize_network.
NetworkGraph make_random_model(const NetworkConfig& cfg, std::uint64_t seed);

/// Seeded generator whose output is identical across standard libraries:
/// std::mt19937_64 is fully specified, the distributions are mapped here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  /// Inclusive range.
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Seeded random 8-bit images: per-channel random brightness plus uniform
/// noise of random spread, so images differ in more than noise.
std::vector<Image> random_images(std::size_t count, std::uint64_t seed,
                                 Shape3 shape = {3, 32, 32});

}  // namespace snnaccel
