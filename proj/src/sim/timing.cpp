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

#include "snnaccel/sim/timing.hpp"

#include <algorithm>
#include <cmath>

#include "snnaccel/errors.hpp"

namespace snnaccel::sim {

namespace {

template <typename F>
void for_each_integer_field(TimingConfig& t, F&& f) {
  f("pad_cycles_per_row", t.pad_cycles_per_row);
  f("weight_switch_cycles", t.weight_switch_cycles);
  f("line_buffer_cycles_per_column", t.line_buffer_cycles_per_column);
  f("pipeline_fill_cycles", t.pipeline_fill_cycles);
  f("output_bits_per_cycle", t.output_bits_per_cycle);
  f("accumulator_bits", t.accumulator_bits);
  f("pool_cycles_per_position", t.pool_cycles_per_position);
  f("pool_overhead_cycles", t.pool_overhead_cycles);
  f("fc_multipliers", t.fc_multipliers);
  f("fc_overhead_cycles", t.fc_overhead_cycles);
  f("bram_capacity_bits", t.bram_capacity_bits);
}

}  // namespace

void TimingConfig::validate() const {
  if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) {
    throw InvalidConfig("clock frequency must be positive");
  }
  auto copy = *this;
  for_each_integer_field(copy, [](const char* name, std::int64_t v) {
    if (v < 0) throw InvalidConfig(std::string(name) + " must be non-negative");
  });
  if (output_bits_per_cycle == 0 || fc_multipliers == 0 || accumulator_bits == 0) {
    throw InvalidConfig("output width, accumulator width and fc multipliers must be positive");
  }
}

void TimingConfig::set(const std::string& key, double value) {
  if (key == "clock_hz") {
    clock_hz = value;
    return;
  }
  bool found = false;
  for_each_integer_field(*this, [&](const char* name, std::int64_t& field) {
    if (key != name) return;
    if (value != std::floor(value)) {
      throw InvalidConfig(key + " takes an integer value");
    }
    field = static_cast<std::int64_t>(value);
    found = true;
  });
  if (!found) throw InvalidConfig("unknown timing parameter '" + key + "'");
}

std::map<std::string, double> TimingConfig::fields() const {
  std::map<std::string, double> m{{"clock_hz", clock_hz}};
  auto copy = *this;
  for_each_integer_field(copy, [&](const char* name, std::int64_t v) {
    m[name] = static_cast<double>(v);
  });
  return m;
}

const char* stage_name(std::size_t s) {
  static const char* names[] = {"padding", "input", "compute", "output"};
  return s < kStages ? names[s] : "?";
}

PipelineSchedule schedule_stages(std::span<const StageCosts> items) {
  PipelineSchedule out;
  out.items.resize(items.size());
  std::array<std::int64_t, kStages> stage_free{};
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::int64_t ready = 0;
    for (std::size_t s = 0; s < kStages; ++s) {
      const std::int64_t start = std::max(ready, stage_free[s]);
      const std::int64_t finish = start + items[i][s];
      out.items[i][s] = {start, finish};
      stage_free[s] = finish;
      ready = finish;
      out.busy[s] += items[i][s];
    }
    out.makespan = std::max(out.makespan, ready);
  }
  return out;
}

}  // namespace snnaccel::sim
