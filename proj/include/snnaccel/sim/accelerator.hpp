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
#include <span>
#include <string>
#include <vector>

#include "snnaccel/golden.hpp"
#include "snnaccel/io/packing.hpp"
#include "snnaccel/sim/bram.hpp"
#include "snnaccel/sim/layer_sim.hpp"
#include "snnaccel/sim/timing.hpp"

namespace snnaccel::sim {

struct SimOptions {
  TimingConfig timing;
  /// One geometry per layer; empty selects default_mapping().
  std::vector<PeArrayGeometry> mapping;
  bool trace = true;
};

/// One inter-layer pipeline stage. A residual projection shares the stage
/// of the block's first convolution, running on its own array.
struct PipelineStage {
  std::string name;
  std::vector<std::string> layers;
  std::int64_t cycles = 0;
};

/// Image-granularity pipeline: the first image takes the sum of the stage
/// cycles, later images enter every max-stage cycles.
struct PipelineReport {
  double clock_hz = 0.0;
  std::size_t images = 0;
  std::vector<PipelineStage> stages;
  std::int64_t latency_cycles = 0;
  std::int64_t ii_cycles = 0;
  /// latency + (images - 1) * II.
  std::int64_t total_cycles = 0;

  double latency_ms() const;
  /// clock / II.
  double fps() const;
  /// clock / latency, single image in flight.
  double fps_latency() const;
  double occupancy(std::size_t stage) const;
};

PipelineReport make_pipeline_report(std::vector<PipelineStage> stages,
                                    double clock_hz, std::size_t images);

std::int64_t pool_cycles(const Shape3& map, const TimingConfig& timing);
std::int64_t fc_cycles(const FcLayerSpec& fc, const TimingConfig& timing);

std::vector<PipelineStage> pipeline_stages(const NetworkGraph& model,
                                           std::span<const PeArrayGeometry> mapping,
                                           const TimingConfig& timing);

/// Timing only; cycle counts do not depend on the data.
PipelineReport estimate_pipeline(const NetworkGraph& model, const SimOptions& opts,
                                 std::size_t images);

struct ImageRun {
  InferenceResult result;
  /// Indexed like NetworkGraph::layers.
  std::vector<AccumulatorMap> accumulators;
  std::vector<SpikeMap> spikes;
  std::vector<LayerTiming> timing;
  ActivityCounters activity;
};

/// The accelerator with its weights resident on chip. One instance owns its
/// BRAM state; run images through it sequentially.
class Accelerator {
 public:
  Accelerator(NetworkGraph model, SimOptions opts);

  ImageRun run(const Image& image);

  const NetworkGraph& model() const { return model_; }
  const BramModel& bram() const { return bram_; }
  const std::vector<PeArrayGeometry>& mapping() const { return mapping_; }
  const ActivityCounters& activity() const { return activity_; }
  PipelineReport pipeline_report(std::size_t images) const;
  std::size_t images_run() const { return images_; }

 private:
  NetworkGraph model_;
  SimOptions opts_;
  std::vector<PeArrayGeometry> mapping_;
  std::vector<io::PackedWeights> packed_;
  std::vector<PipelineStage> stages_;
  /// Start cycle of each layer relative to its image's entry.
  std::vector<std::int64_t> layer_offset_;
  std::int64_t pool_offset_ = 0;
  std::int64_t fc_offset_ = 0;
  std::int64_t ii_ = 0;
  BramModel bram_;
  ActivityCounters activity_;
  std::size_t images_ = 0;
};

struct SimulationResult {
  PipelineReport pipeline;
  std::vector<InferenceResult> results;
  ActivityCounters activity;
  std::int64_t bram_bit_accesses = 0;
  bool trace_causal = true;
};

SimulationResult simulate_pipeline(const NetworkGraph& model,
                                   std::span<const Image> images,
                                   const SimOptions& opts = {});

}  // namespace snnaccel::sim
