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

#include <gtest/gtest.h>

#include "oracle/fixtures.hpp"
#include "oracle/oracle.hpp"
#include "snnaccel/errors.hpp"
#include "snnaccel/golden.hpp"
#include "snnaccel/io/packing.hpp"
#include "snnaccel/sim/pe_array.hpp"

using namespace snnaccel;
using namespace snnaccel::sim;

namespace {

ConvLayerSpec make_layer(Rng& rng, std::size_t in, std::size_t out, std::size_t groups,
                         std::size_t hw, std::size_t stride = 1) {
  ConvGeometry g{.in_channels = in, .out_channels = out, .kernel = 3, .stride = stride,
                 .padding = 1, .groups = groups};
  return fixtures::random_layer(rng, g, {in, hw, hw});
}

}  // namespace

TEST(RunPeArray, ImpulsePlacesKernel) {
  Rng rng(1);
  const auto l = make_layer(rng, 8, 8, 1, 5);
  const auto geom = main_geometry();
  const auto packed = io::pack_weights(l, geom);
  const auto schedule = tile_layer(l, geom);
  SpikeMap s({8, 5, 5});
  s.set(2, 2, 2, true);  // centre of channel 2
  const auto padded = pad_buffer(from_spikes(s), 1);
  const auto run = run_pe_array(schedule.tiles[0], io::WeightStream(packed, 0), padded,
                                l.geometry, geom, TimingConfig{});
  // Output (y, x) sees the impulse through tap (2 - y + 1, 2 - x + 1).
  for (std::size_t o = 0; o < 8; ++o) {
    for (std::size_t y = 0; y < 5; ++y) {
      for (std::size_t x = 0; x < 5; ++x) {
        const long ky = 3 - static_cast<long>(y);
        const long kx = 3 - static_cast<long>(x);
        const std::int32_t expect =
            (ky >= 0 && ky < 3 && kx >= 0 && kx < 3)
                ? l.weight(o, 2, static_cast<std::size_t>(ky), static_cast<std::size_t>(kx))
                : 0;
        ASSERT_EQ(run.partial.values[(o * 5 + y) * 5 + x], expect);
      }
    }
  }
  EXPECT_EQ(run.activity.gated_adds, 8 * 9);
}

TEST(RunPeArray, ZeroInputStillSweeps) {
  Rng rng(2);
  const auto l = make_layer(rng, 8, 8, 1, 6);
  const auto geom = main_geometry();
  const auto packed = io::pack_weights(l, geom);
  const auto tile = tile_layer(l, geom).tiles[0];
  const TimingConfig t;
  const auto run = run_pe_array(tile, io::WeightStream(packed, 0),
                                pad_buffer(from_spikes(SpikeMap({8, 6, 6})), 1), l.geometry,
                                geom, t);
  for (auto v : run.partial.values) ASSERT_EQ(v, 0);
  EXPECT_EQ(run.compute_cycles, 36);
  EXPECT_EQ(run.overhead_cycles, t.weight_switch_cycles + t.pipeline_fill_cycles);
  EXPECT_EQ(run.activity.gated_adds, 0);
  EXPECT_EQ(run.activity.gated_slots, 36 * 64 * 9);
}

TEST(RunPeArray, FullMapSweepCycles) {
  Rng rng(3);
  const auto l = make_layer(rng, 8, 8, 1, 32);
  const auto geom = main_geometry();
  const auto packed = io::pack_weights(l, geom);
  TimingConfig t;
  t.weight_switch_cycles = 7;
  t.pipeline_fill_cycles = 5;
  const auto run = run_pe_array(tile_layer(l, geom).tiles[0], io::WeightStream(packed, 0),
                                pad_buffer(from_spikes(fixtures::random_spikes(rng, {8, 32, 32})), 1),
                                l.geometry, geom, t);
  EXPECT_EQ(run.compute_cycles, 1024);
  EXPECT_EQ(run.cycles(), 1024 + 12);
}

TEST(RunPeArray, RejectsMultiBitInputOnGatedArray) {
  Rng rng(4);
  const auto l = make_layer(rng, 8, 8, 1, 4);
  const auto geom = main_geometry();
  const auto packed = io::pack_weights(l, geom);
  auto buf = pad_buffer(from_spikes(SpikeMap({8, 4, 4})), 1);
  buf.values[buf.shape.index(0, 1, 1)] = 3;
  EXPECT_THROW(run_pe_array(tile_layer(l, geom).tiles[0], io::WeightStream(packed, 0), buf,
                            l.geometry, geom, TimingConfig{}),
               InvalidConfig);
}

TEST(AccumulateGroup, Examples) {
  PartialSums m{0, {2, 2, 2}, {1, -2, 3, 4, 5, 6, -7, 8}};
  EXPECT_EQ(accumulate_group(std::vector<PartialSums>{m}), m);
  const auto four = accumulate_group(std::vector<PartialSums>{m, m, m, m});
  for (std::size_t i = 0; i < m.values.size(); ++i) EXPECT_EQ(four.values[i], 4 * m.values[i]);
  PartialSums other{0, {2, 2, 1}, {0, 0, 0, 0}};
  EXPECT_THROW(accumulate_group(std::vector<PartialSums>{m, other}), ShapeMismatch);
  EXPECT_THROW(accumulate_group(std::vector<PartialSums>{}), ShapeMismatch);
}

// Summed reuse passes against the golden convolution without bias.
TEST(AccumulateGroup, PassesReproduceGoldenConv) {
  Rng rng(5);
  for (int c = 0; c < 30; ++c) {
    const std::size_t groups = std::size_t{1} << rng.integer(0, 2);
    auto l = make_layer(rng, 32, 16, groups, 6, static_cast<std::size_t>(rng.integer(1, 2)));
    std::fill(l.bias.begin(), l.bias.end(), 0);
    const auto geom = main_geometry();
    const auto packed = io::pack_weights(l, geom);
    const auto schedule = tile_layer(l, geom);
    const auto x = fixtures::random_spikes(rng, l.input_shape);
    const auto padded = pad_buffer(from_spikes(x), 1);
    const auto ref = golden::conv2d_grouped(x, l);
    std::vector<PartialSums> partials;
    for (std::size_t i = 0; i < schedule.tiles.size(); ++i) {
      const auto& t = schedule.tiles[i];
      partials.push_back(run_pe_array(t, io::WeightStream(packed, i), padded, l.geometry, geom,
                                      TimingConfig{})
                             .partial);
      if (!t.last_pass()) continue;
      const auto sum = accumulate_group(partials);
      partials.clear();
      const auto plane = schedule.output.plane();
      for (std::size_t k = 0; k < sum.values.size(); ++k) {
        ASSERT_EQ(sum.values[k], ref.values[t.out_begin * plane + k]);
      }
    }
  }
}

TEST(FeatureBuffer, Conversions) {
  const SpikeMap s({1, 2, 2}, {1, 0, 0, 1});
  const auto b = from_spikes(s);
  EXPECT_EQ(b.bits(), 4);
  EXPECT_EQ(b.scale_exponent, 0);
  const IntTensor q({1, 2, 2}, {1, -2, 3, 4}, QuantParams(8, 7));
  const auto p = from_pixels(q);
  EXPECT_EQ(p.bits(), 32);
  EXPECT_EQ(p.scale_exponent, 7);
  const auto padded = pad_buffer(p, 2);
  EXPECT_EQ(padded.shape, (Shape3{1, 6, 6}));
  EXPECT_EQ(padded.values[padded.shape.index(0, 2, 3)], -2);
}
