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

#include "snnaccel/sim/schedule.hpp"

#include <algorithm>
#include <cstdio>

#include "snnaccel/errors.hpp"

namespace snnaccel::sim {

void PeArrayGeometry::validate() const {
  if (core_rows == 0 || core_cols == 0 || pes_per_core == 0) {
    throw GeometryMismatch("PE array extents must be at least 1");
  }
}

std::string PeArrayGeometry::str() const {
  return std::to_string(core_rows) + "x" + std::to_string(core_cols) + "x" +
         std::to_string(pes_per_core) + (uses_multipliers ? ":mult" : ":gated");
}

PeArrayGeometry parse_geometry(const std::string& s) {
  std::size_t rows = 0, cols = 0, pes = 0;
  char kind[16] = {};
  if (std::sscanf(s.c_str(), "%zux%zux%zu:%15s", &rows, &cols, &pes, kind) != 4) {
    throw GeometryMismatch("cannot parse array geometry '" + s + "'");
  }
  const std::string k(kind);
  if (k != "mult" && k != "gated") {
    throw GeometryMismatch("unknown PE kind '" + k + "'");
  }
  PeArrayGeometry g{rows, cols, pes, k == "mult"};
  g.validate();
  return g;
}

PeArrayGeometry encode_geometry() { return {3, 64, 9, true}; }
PeArrayGeometry main_geometry(std::size_t kernel) { return {8, 8, kernel * kernel, false}; }
PeArrayGeometry residual_geometry() { return {64, 8, 1, true}; }

PeArrayGeometry default_geometry(const ConvLayerSpec& layer) {
  switch (layer.role) {
    case LayerRole::kEncode: return encode_geometry();
    case LayerRole::kShortcut: return residual_geometry();
    case LayerRole::kMain: return main_geometry(layer.geometry.kernel);
  }
  return main_geometry(layer.geometry.kernel);
}

std::vector<PeArrayGeometry> default_mapping(const NetworkGraph& model) {
  std::vector<PeArrayGeometry> m;
  m.reserve(model.layers.size());
  for (const auto& l : model.layers) m.push_back(default_geometry(l));
  return m;
}

std::size_t TileSchedule::output_tiles() const {
  return static_cast<std::size_t>(
      std::count_if(tiles.begin(), tiles.end(), [](const Tile& t) { return t.pass == 0; }));
}

TileSchedule tile_layer(const ConvLayerSpec& layer, const PeArrayGeometry& geom) {
  geom.validate();
  const auto& g = layer.geometry;
  g.validate();
  if (geom.pes_per_core != g.taps()) {
    throw GeometryMismatch(layer.name + ": " + std::to_string(g.kernel) + "x" +
                           std::to_string(g.kernel) + " kernel on a core of " +
                           std::to_string(geom.pes_per_core) + " PEs");
  }
  TileSchedule s;
  s.output = layer.output_shape();
  s.kernel = g.kernel;
  const auto ipg = g.in_per_group();
  const auto opg = g.out_per_group();
  const auto passes = (ipg + geom.core_rows - 1) / geom.core_rows;
  for (std::size_t grp = 0; grp < g.groups; ++grp) {
    for (std::size_t o = 0; o < opg; o += geom.core_cols) {
      const auto out_count = std::min(geom.core_cols, opg - o);
      for (std::size_t p = 0; p < passes; ++p) {
        Tile t;
        t.group = grp;
        t.out_begin = grp * opg + o;
        t.out_count = out_count;
        t.in_begin = grp * ipg + p * geom.core_rows;
        t.in_count = std::min(geom.core_rows, ipg - p * geom.core_rows);
        t.pass = p;
        t.passes = passes;
        s.tiles.push_back(t);
      }
    }
  }
  return s;
}

}  // namespace snnaccel::sim
