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
#include <vector>

#include "snnaccel/network.hpp"
#include "snnaccel/tensor.hpp"

namespace snnaccel {

/// 8-bit image, channel-planar (c, y, x).
struct Image {
  Shape3 shape{3, 32, 32};
  std::vector<std::uint8_t> pixels;

  bool operator==(const Image&) const = default;
};

/// Per-channel spike counts over `area` positions; the pooled value of
/// channel c is sums[c] / area.
struct PooledVector {
  std::vector<std::int64_t> sums;
  std::int64_t area = 1;

  double value(std::size_t c) const {
    return static_cast<double>(sums[c]) / static_cast<double>(area);
  }
  bool operator==(const PooledVector&) const = default;
};

struct InferenceResult {
  int label = 0;
  std::vector<std::int64_t> scores;

  bool operator==(const InferenceResult&) const = default;
};

/// Index of the largest score; ties go to the lowest index.
int argmax(std::span<const std::int64_t> scores);

}  // namespace snnaccel

/// Bit-exact functional reference for the quantized network.
namespace snnaccel::golden {

SpikeMap pad2d(const SpikeMap& x, std::size_t p);
IntTensor pad2d(const IntTensor& x, std::size_t p);

/// Grouped strided cross-correlation plus bias, exact integer arithmetic.
AccumulatorMap conv2d_grouped(const SpikeMap& x, const ConvLayerSpec& layer);
AccumulatorMap conv2d_grouped(const IntTensor& x, const ConvLayerSpec& layer);

/// Throws ShapeMismatch or ScaleMismatch; never rescales implicitly.
AccumulatorMap residual_add(const AccumulatorMap& a, const AccumulatorMap& b);

/// Identity shortcut: each spike becomes 2^exponent in accumulator scale.
AccumulatorMap spikes_to_accumulator(const SpikeMap& x, int exponent);

PooledVector global_avg_pool(const SpikeMap& x);

/// scores = W * counts + b, where b is already at scale 2^n * area.
InferenceResult fully_connected(const PooledVector& v, const FcLayerSpec& fc);

/// Pixel byte b maps to real value b / 255 before quantization.
IntTensor quantize_image(const Image& image, const QuantParams& p);

/// Every activation the network produces for one image.
struct InferenceTrace {
  IntTensor input;
  /// Indexed like NetworkGraph::layers; shortcut layers hold the
  /// accumulator they contribute and no spikes.
  std::vector<AccumulatorMap> accumulators;
  std::vector<SpikeMap> spikes;
  PooledVector pooled;
  InferenceResult result;
};

InferenceTrace infer_trace(const Image& image, const NetworkGraph& model);
InferenceResult infer(const Image& image, const NetworkGraph& model);

/// Fans images out over `threads` workers sharing the immutable model.
std::vector<InferenceResult> infer_batch(std::span<const Image> images,
                                         const NetworkGraph& model,
                                         unsigned threads = 1);

}  // namespace snnaccel::golden
