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
#include <vector>

#include "snnaccel/network.hpp"
#include "snnaccel/sim/schedule.hpp"

namespace snnaccel::io {

/// Weights laid out in the order the PE array consumes them: one segment per
/// tile in schedule order, and within a tile core column (output channel),
/// core row (input channel), then kernel tap row-major. Values are
/// little-endian two's complement, one byte each up to 8 bits, two bytes up
/// to 16.
struct PackedWeights {
  ConvGeometry conv;
  sim::PeArrayGeometry array;
  QuantParams params;
  std::size_t element_bytes = 1;

  struct Segment {
    std::size_t offset = 0;  // elements
    std::size_t count = 0;
    bool operator==(const Segment&) const = default;
  };
  std::vector<Segment> segments;
  std::vector<std::uint8_t> bytes;

  std::size_t elements() const { return bytes.size() / element_bytes; }
  std::int32_t value(std::size_t i) const;

  bool operator==(const PackedWeights&) const = default;
};

/// Throws GeometryMismatch when the array cannot hold the kernel.
PackedWeights pack_weights(const ConvLayerSpec& layer, const sim::PeArrayGeometry& geom);

/// Inverse of pack_weights: the logical (out, in/g, k, k) tensor.
IntTensor unpack_weights(const PackedWeights& packed);

/// Reads one tile segment front to back.
class WeightStream {
 public:
  WeightStream(const PackedWeights& packed, std::size_t segment);
  std::int32_t next();
  bool done() const { return pos_ == end_; }
  std::size_t remaining() const { return end_ - pos_; }

 private:
  const PackedWeights* packed_;
  std::size_t pos_;
  std::size_t end_;
};

}  // namespace snnaccel::io
