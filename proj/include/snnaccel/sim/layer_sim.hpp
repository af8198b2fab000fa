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

#include <optional>
#include <string>
#include <vector>

#include "snnaccel/io/packing.hpp"
#include "snnaccel/sim/bram.hpp"
#include "snnaccel/sim/pe_array.hpp"
#include "snnaccel/sim/timing.hpp"

namespace snnaccel::sim {

struct LayerTiming {
  std::string layer;
  std::int64_t invocations = 0;
  /// Output positions swept over all invocations.
  std::int64_t compute_cycles = 0;
  /// Makespan of the overlapped padding/input/compute/output pipeline.
  std::int64_t cycles = 0;
  /// Sum of all stage costs, i.e. the makespan without overlap.
  std::int64_t sequential_cycles = 0;
  StageCosts stage_busy{};
};

/// Per-invocation costs of the four intra-layer stages.
std::vector<StageCosts> layer_stage_costs(const ConvLayerSpec& layer,
                                          const TileSchedule& schedule,
                                          const TimingConfig& timing);
LayerTiming layer_timing(const ConvLayerSpec& layer, const PeArrayGeometry& geom,
                         const TimingConfig& timing);

/// BRAM buffer names used by the simulator.
std::string weights_buffer(const std::string& layer);
std::string output_buffer(const std::string& layer);
inline constexpr const char* kInputBuffer = "input";

/// Bits a layer writes to its output buffer: 1 per spike, or the
/// accumulator width for residual projections.
std::int64_t output_bits(const ConvLayerSpec& layer, const TimingConfig& timing);

struct LayerContext {
  BramModel* bram = nullptr;
  std::size_t image = 0;
  std::int64_t start_cycle = 0;
  std::string input_buffer = kInputBuffer;
  /// Buffer holding the residual operand, when one is passed, and the
  /// width of its entries.
  std::string residual_buffer;
  std::int64_t residual_bits = 1;
};

struct LayerSimResult {
  AccumulatorMap accumulators;
  /// Absent for residual projections, which do not fire.
  std::optional<SpikeMap> spikes;
  LayerTiming timing;
  ActivityCounters activity;
};

/// Runs one layer through the tiled dataflow. The residual operand, if
/// given, is added at the output stage before thresholding. Throws
/// InvalidConfig if the layer's weights are not resident in BRAM and
/// CapacityExceeded if its output buffer does not fit.
LayerSimResult simulate_layer(const ConvLayerSpec& layer,
                              const io::PackedWeights& weights,
                              const PeArrayGeometry& geom,
                              const FeatureBuffer& input,
                              const TimingConfig& timing, const LayerContext& ctx,
                              const AccumulatorMap* residual = nullptr);

/// Allocates the layer's weight bank and records the preload.
void load_layer_weights(BramModel& bram, const ConvLayerSpec& layer,
                        const io::PackedWeights& packed);

}  // namespace snnaccel::sim
