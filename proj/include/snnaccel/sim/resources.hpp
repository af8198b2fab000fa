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
#include <string>
#include <vector>

#include "snnaccel/network.hpp"
#include "snnaccel/sim/pe_array.hpp"
#include "snnaccel/sim/schedule.hpp"
#include "snnaccel/sim/timing.hpp"

namespace snnaccel::sim {

/// Relative cost per operation for the energy proxy.
struct EnergyWeights {
  double mac = 1.0;
  double gated_add = 0.1;
  double bram_bit = 0.01;
};

struct LayerResources {
  std::string name;
  PeArrayGeometry geometry;
  std::int64_t mac_units = 0;
  std::int64_t multiplier_units = 0;
  std::int64_t weight_bits = 0;
  std::int64_t bias_bits = 0;
  std::int64_t feature_bits = 0;
  /// Dense per-image operation counts.
  std::int64_t macs = 0;
  std::int64_t gated_adds = 0;
  std::int64_t bram_bit_accesses = 0;
};

struct ResourceReport {
  /// Convolution layers, then "input", "pool" and "fc" rows when present.
  std::vector<LayerResources> layers;
  std::int64_t mac_units = 0;
  std::int64_t multiplier_units = 0;
  std::int64_t weight_bits = 0;
  std::int64_t bias_bits = 0;
  std::int64_t feature_bits = 0;
  std::int64_t on_chip_bits = 0;
  std::int64_t macs = 0;
  std::int64_t gated_adds = 0;
  std::int64_t bram_bit_accesses = 0;
  double energy_proxy = 0.0;
  std::int64_t capacity_bits = 0;

  bool fits() const { return on_chip_bits <= capacity_bits; }
};

double energy_proxy(std::int64_t macs, std::int64_t gated_adds,
                    std::int64_t bram_bits, const EnergyWeights& w);

/// Static resources for a mapping, with dense operation counts (every
/// gated slot counted as an add). Totals are sums of the per-layer rows.
ResourceReport resource_report(const NetworkGraph& model,
                               std::span<const PeArrayGeometry> mapping,
                               const TimingConfig& timing = {},
                               const EnergyWeights& energy = {});

}  // namespace snnaccel::sim
