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

#include "snnaccel/io/packing.hpp"
#include "snnaccel/sim/schedule.hpp"
#include "snnaccel/sim/timing.hpp"

namespace snnaccel::sim {

/// A feature map as it sits in a BRAM buffer: spikes (1 bit) or quantized
/// pixels (8 bits), held as int32 words in the model.
struct FeatureBuffer {
  Shape3 shape;
  std::vector<std::int32_t> values;
  int bits_per_value = 1;
  int scale_exponent = 0;

  std::int64_t bits() const {
    return static_cast<std::int64_t>(shape.size()) * bits_per_value;
  }
};

FeatureBuffer from_spikes(const SpikeMap& s);
FeatureBuffer from_pixels(const IntTensor& q);
/// Padding stage: zero border of p on each spatial side.
FeatureBuffer pad_buffer(const FeatureBuffer& in, std::size_t p);

/// F_sum of one invocation for out_count channels over the full output map.
struct PartialSums {
  std::size_t out_begin = 0;
  Shape3 shape;
  std::vector<std::int32_t> values;

  bool operator==(const PartialSums&) const = default;
};

struct ActivityCounters {
  /// Multiplier-class multiply-adds (dense).
  std::int64_t macs = 0;
  /// Spike-gated additions actually performed (input spike = 1).
  std::int64_t gated_adds = 0;
  /// Window-tap slots swept by spike-gated arrays, spiking or not.
  std::int64_t gated_slots = 0;

  ActivityCounters& operator+=(const ActivityCounters& o) {
    macs += o.macs;
    gated_adds += o.gated_adds;
    gated_slots += o.gated_slots;
    return *this;
  }
  bool operator==(const ActivityCounters&) const = default;
};

struct PeArrayRun {
  PartialSums partial;
  /// One output position per clock.
  std::int64_t compute_cycles = 0;
  /// Weight switch plus pipeline fill.
  std::int64_t overhead_cycles = 0;
  ActivityCounters activity;

  std::int64_t cycles() const { return compute_cycles + overhead_cycles; }
};

/// Runs one invocation. `padded` must already carry the layer's padding;
/// weights come from the tile's packed segment, read in order.
PeArrayRun run_pe_array(const Tile& tile, io::WeightStream weights,
                        const FeatureBuffer& padded, const ConvGeometry& conv,
                        const PeArrayGeometry& geom, const TimingConfig& timing);

/// Element-wise sum of the reuse-pass partials of one output tile.
PartialSums accumulate_group(std::span<const PartialSums> partials);

}  // namespace snnaccel::sim
