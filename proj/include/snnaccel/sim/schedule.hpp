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
#include <string>
#include <vector>

#include "snnaccel/network.hpp"

namespace snnaccel::sim {

/// Shape of one PE array: core_rows input channels by core_cols output
/// channels, each core holding pes_per_core MAC units (one kernel window per
/// clock).
struct PeArrayGeometry {
  std::size_t core_rows = 8;
  std::size_t core_cols = 8;
  std::size_t pes_per_core = 9;
  /// DSP-class multiply-add PEs; otherwise spike-gated adders.
  bool uses_multipliers = false;

  std::size_t cores() const { return core_rows * core_cols; }
  std::size_t mac_units() const { return cores() * pes_per_core; }
  void validate() const;
  std::string str() const;

  bool operator==(const PeArrayGeometry&) const = default;
};

/// 3x64 multiplier array fed with quantized pixels.
PeArrayGeometry encode_geometry();
/// 8x8 spike-gated array for the main path.
PeArrayGeometry main_geometry(std::size_t kernel = 3);
/// 64x8 multiplier array for 1x1 residual projections.
PeArrayGeometry residual_geometry();
PeArrayGeometry default_geometry(const ConvLayerSpec& layer);
std::vector<PeArrayGeometry> default_mapping(const NetworkGraph& model);

PeArrayGeometry parse_geometry(const std::string& s);

/// One PE-array invocation: an output-channel tile against one input-channel
/// chunk of its group, swept over the whole output map.
struct Tile {
  std::size_t group = 0;
  std::size_t out_begin = 0;
  std::size_t out_count = 0;
  /// Absolute input channel index.
  std::size_t in_begin = 0;
  std::size_t in_count = 0;
  /// 0-based reuse pass within the output tile.
  std::size_t pass = 0;
  std::size_t passes = 1;

  bool last_pass() const { return pass + 1 == passes; }
  bool operator==(const Tile&) const = default;
};

struct TileSchedule {
  std::vector<Tile> tiles;
  Shape3 output;
  std::size_t kernel = 3;

  std::size_t invocations() const { return tiles.size(); }
  std::size_t output_tiles() const;
};

/// Output tiles of at most core_cols channels that never straddle a group;
/// each followed immediately by its ceil((C_in/g)/core_rows) reuse passes.
/// Throws GeometryMismatch if pes_per_core != kernel^2.
TileSchedule tile_layer(const ConvLayerSpec& layer, const PeArrayGeometry& geom);

}  // namespace snnaccel::sim
