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

#include "snnaccel/sim/resources.hpp"

#include <bit>

#include "snnaccel/errors.hpp"
#include "snnaccel/sim/layer_sim.hpp"

namespace snnaccel::sim {

double energy_proxy(std::int64_t macs, std::int64_t gated_adds, std::int64_t bram_bits,
                    const EnergyWeights& w) {
  return static_cast<double>(macs) * w.mac + static_cast<double>(gated_adds) * w.gated_add +
         static_cast<double>(bram_bits) * w.bram_bit;
}

ResourceReport resource_report(const NetworkGraph& model,
                               std::span<const PeArrayGeometry> mapping,
                               const TimingConfig& timing, const EnergyWeights& energy) {
  if (mapping.size() != model.layers.size()) {
    throw GeometryMismatch("mapping size differs from the layer count");
  }
  ResourceReport r;
  r.capacity_bits = timing.bram_capacity_bits;

  if (!model.layers.empty()) {
    LayerResources in;
    in.name = "input";
    in.feature_bits =
        static_cast<std::int64_t>(model.input_shape.size()) * model.input_params.bits();
    in.bram_bit_accesses = in.feature_bits;
    r.layers.push_back(in);
  }

  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const auto& l = model.layers[i];
    const auto& geom = mapping[i];
    const auto schedule = tile_layer(l, geom);
    const auto plane = static_cast<std::int64_t>(schedule.output.plane());
    const auto in_plane = static_cast<std::int64_t>(l.input_shape.plane());
    const std::int64_t in_bits = l.is_encoding() ? model.input_params.bits() : 1;
    const std::int64_t wbits = l.weights.params().bits();
    const std::int64_t out_bits = output_bits(l, timing);

    LayerResources row;
    row.name = l.name;
    row.geometry = geom;
    row.mac_units = static_cast<std::int64_t>(geom.mac_units());
    row.multiplier_units = geom.uses_multipliers ? row.mac_units : 0;
    row.weight_bits = static_cast<std::int64_t>(l.geometry.weight_count()) * wbits;
    row.bias_bits = static_cast<std::int64_t>(l.bias.size()) * 32;
    row.feature_bits = static_cast<std::int64_t>(schedule.output.size()) * out_bits;
    const auto slots = static_cast<std::int64_t>(l.geometry.weight_count()) * plane;
    (geom.uses_multipliers ? row.macs : row.gated_adds) = slots;

    std::int64_t residual_bits = 0;
    if (auto b = block_closed_by(model, i)) {
      residual_bits = model.blocks[*b].shortcut ? timing.accumulator_bits : 1;
    }
    for (const auto& t : schedule.tiles) {
      const auto k = static_cast<std::int64_t>(l.geometry.kernel);
      row.bram_bit_accesses += static_cast<std::int64_t>(t.in_count) * in_plane * in_bits;
      row.bram_bit_accesses +=
          static_cast<std::int64_t>(t.out_count * t.in_count) * k * k * wbits;
      if (t.last_pass()) {
        const auto values = static_cast<std::int64_t>(t.out_count) * plane;
        row.bram_bit_accesses += values * (out_bits + residual_bits);
      }
    }
    r.layers.push_back(row);
  }

  if (model.fc) {
    const auto& fc = *model.fc;
    const Shape3 last = model.blocks.empty()
                            ? model.layers.front().output_shape()
                            : model.layers[model.blocks.back().conv_b].output_shape();
    LayerResources pool;
    pool.name = "pool";
    pool.feature_bits = static_cast<std::int64_t>(fc.in_features) *
                        static_cast<std::int64_t>(
                            std::bit_width(static_cast<std::uint64_t>(fc.pool_area)));
    pool.bram_bit_accesses = static_cast<std::int64_t>(last.size()) + pool.feature_bits;
    r.layers.push_back(pool);

    LayerResources row;
    row.name = "fc";
    row.mac_units = timing.fc_multipliers;
    row.multiplier_units = timing.fc_multipliers;
    row.weight_bits = static_cast<std::int64_t>(fc.weights.size()) * fc.weights.params().bits();
    row.bias_bits = static_cast<std::int64_t>(fc.bias.size()) * 32;
    row.macs = static_cast<std::int64_t>(fc.in_features * fc.out_features);
    row.bram_bit_accesses = pool.feature_bits + row.weight_bits + row.bias_bits;
    r.layers.push_back(row);
  }

  for (const auto& row : r.layers) {
    r.mac_units += row.mac_units;
    r.multiplier_units += row.multiplier_units;
    r.weight_bits += row.weight_bits;
    r.bias_bits += row.bias_bits;
    r.feature_bits += row.feature_bits;
    r.macs += row.macs;
    r.gated_adds += row.gated_adds;
    r.bram_bit_accesses += row.bram_bit_accesses;
  }
  r.on_chip_bits = r.weight_bits + r.bias_bits + r.feature_bits;
  r.energy_proxy = energy_proxy(r.macs, r.gated_adds, r.bram_bit_accesses, energy);
  return r;
}

}  // namespace snnaccel::sim
