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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace snnaccel::sim {

/// Cycle costs the hardware description leaves open. Defaults put the
/// default network at roughly 5e5 cycles of single-image latency.
struct TimingConfig {
  double clock_hz = 100e6;
  /// Padding stage: padded rows streamed per invocation, cycles per row.
  std::int64_t pad_cycles_per_row = 1;
  /// Input stage: swapping a tile's weights into the array.
  std::int64_t weight_switch_cycles = 4;
  /// Input stage: line-buffer fill of (kernel - 1) padded rows, cycles per
  /// buffered pixel column.
  std::int64_t line_buffer_cycles_per_column = 1;
  /// Compute stage: window register plus adder-tree latency.
  std::int64_t pipeline_fill_cycles = 3;
  /// Output stage BRAM write width.
  std::int64_t output_bits_per_cycle = 64;
  /// Accumulator width stored for residual projections.
  std::int64_t accumulator_bits = 32;
  std::int64_t pool_cycles_per_position = 1;
  std::int64_t pool_overhead_cycles = 2;
  /// FC classifier multiply-add units; one score term per unit per cycle.
  std::int64_t fc_multipliers = 10;
  std::int64_t fc_overhead_cycles = 2;
  /// 674.5 blocks of 36 Kbit.
  std::int64_t bram_capacity_bits = 24'864'768;

  void validate() const;
  /// Override one field by name; throws InvalidConfig on unknown keys or
  /// non-integral values for integer fields.
  void set(const std::string& key, double value);
  std::map<std::string, double> fields() const;

  bool operator==(const TimingConfig&) const = default;
};

enum Stage : std::size_t { kPad = 0, kInput = 1, kCompute = 2, kOutput = 3 };
inline constexpr std::size_t kStages = 4;
const char* stage_name(std::size_t s);

using StageCosts = std::array<std::int64_t, kStages>;

struct StageWindow {
  std::int64_t start = 0;
  std::int64_t finish = 0;
};

/// Start/finish of every stage of every item in a 4-stage in-order
/// pipeline where each stage holds one item at a time.
struct PipelineSchedule {
  std::vector<std::array<StageWindow, kStages>> items;
  std::int64_t makespan = 0;
  StageCosts busy{};
};

PipelineSchedule schedule_stages(std::span<const StageCosts> items);

}  // namespace snnaccel::sim
