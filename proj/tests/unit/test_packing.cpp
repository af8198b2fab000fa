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
#include "snnaccel/errors.hpp"
#include "snnaccel/io/packing.hpp"
#include "snnaccel/model_prep.hpp"

using namespace snnaccel;
using namespace snnaccel::sim;

namespace {

ConvLayerSpec layer(Rng& rng, std::size_t in, std::size_t out, std::size_t groups,
                    std::size_t kernel = 3, int bits = 8) {
  ConvGeometry g{.in_channels = in, .out_channels = out, .kernel = kernel, .stride = 1,
                 .padding = kernel / 2, .groups = groups};
  return fixtures::random_layer(rng, g, {in, 4, 4}, bits);
}

}  // namespace

TEST(PackWeights, SingleTileIsContiguous) {
  Rng rng(1);
  const auto l = layer(rng, 8, 8, 1);
  const auto p = io::pack_weights(l, main_geometry());
  ASSERT_EQ(p.segments.size(), 1u);
  EXPECT_EQ(p.segments[0].offset, 0u);
  EXPECT_EQ(p.segments[0].count, 8u * 8 * 9);
  EXPECT_EQ(p.element_bytes, 1u);
  // One tile in output-then-input-then-tap order equals the logical layout.
  for (std::size_t i = 0; i < p.elements(); ++i) ASSERT_EQ(p.value(i), l.weights[i]);
}

TEST(PackWeights, GroupedDefaultLayer) {
  Rng rng(2);
  const auto l = layer(rng, 128, 128, 4);
  const auto p = io::pack_weights(l, main_geometry());
  EXPECT_EQ(p.segments.size(), 64u);
  std::size_t offset = 0;
  for (const auto& s : p.segments) {
    EXPECT_EQ(s.offset, offset);
    EXPECT_EQ(s.count, 8u * 8 * 9);
    offset += s.count;
  }
  EXPECT_EQ(p.elements(), l.geometry.weight_count());
  EXPECT_EQ(p.bytes.size(), 128u * 32 * 9);
}

TEST(PackWeights, SegmentOrderFollowsTiles) {
  Rng rng(3);
  const auto l = layer(rng, 16, 8, 1);
  const auto p = io::pack_weights(l, main_geometry());
  const auto schedule = tile_layer(l, main_geometry());
  ASSERT_EQ(p.segments.size(), schedule.tiles.size());
  for (std::size_t i = 0; i < schedule.tiles.size(); ++i) {
    const auto& t = schedule.tiles[i];
    io::WeightStream ws(p, i);
    for (std::size_t c = 0; c < t.out_count; ++c) {
      for (std::size_t r = 0; r < t.in_count; ++r) {
        for (std::size_t k = 0; k < 9; ++k) {
          ASSERT_EQ(ws.next(), l.weight(t.out_begin + c, t.in_begin + r, k / 3, k % 3));
        }
      }
    }
    EXPECT_TRUE(ws.done());
  }
}

TEST(PackWeights, RoundTripProperty) {
  Rng rng(4);
  for (int c = 0; c < 200; ++c) {
    const std::size_t groups = std::size_t{1} << rng.integer(0, 3);
    const auto in = groups * static_cast<std::size_t>(rng.integer(1, 20));
    const auto out = groups * static_cast<std::size_t>(rng.integer(1, 20));
    const std::size_t kernel = rng.integer(0, 1) ? 3 : 1;
    const int bits = static_cast<int>(rng.integer(2, 16));
    const auto l = layer(rng, in, out, groups, kernel, bits);
    const PeArrayGeometry geom{static_cast<std::size_t>(rng.integer(1, 9)),
                               static_cast<std::size_t>(rng.integer(1, 9)), kernel * kernel,
                               false};
    const auto p = io::pack_weights(l, geom);
    ASSERT_EQ(p.elements(), l.geometry.weight_count());
    ASSERT_EQ(p.bytes.size(), l.geometry.weight_count() * (bits <= 8 ? 1 : 2));
    ASSERT_EQ(io::unpack_weights(p), l.weights);
  }
}

TEST(PackWeights, SixteenBitValues) {
  Rng rng(5);
  auto l = layer(rng, 8, 8, 1, 3, 16);
  const auto p = io::pack_weights(l, main_geometry());
  EXPECT_EQ(p.element_bytes, 2u);
  EXPECT_EQ(io::unpack_weights(p), l.weights);
}

TEST(PackWeights, ParameterBytesMatchCount) {
  const auto g = make_random_model({}, 6);
  const auto mapping = default_mapping(g);
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    bytes += io::pack_weights(g.layers[i], mapping[i]).bytes.size();
  }
  EXPECT_EQ(bytes + g.fc->weights.size(), 702'336u);
}

TEST(PackWeights, GeometryMismatch) {
  Rng rng(7);
  const auto l = layer(rng, 8, 8, 1);
  EXPECT_THROW(io::pack_weights(l, residual_geometry()), GeometryMismatch);
}

TEST(WeightStream, Exhausts) {
  Rng rng(8);
  const auto l = layer(rng, 4, 4, 1);
  const auto p = io::pack_weights(l, main_geometry());
  io::WeightStream ws(p, 0);
  EXPECT_EQ(ws.remaining(), 144u);
  while (!ws.done()) ws.next();
  EXPECT_EQ(ws.remaining(), 0u);
}
