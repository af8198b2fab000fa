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

#include <cmath>

#include "snnaccel/errors.hpp"
#include "snnaccel/model_prep.hpp"
#include "snnaccel/network.hpp"

using namespace snnaccel;

TEST(ConvParamCount, Examples) {
  EXPECT_EQ(conv_param_count(128, 128, 1, 3), 147456u);
  EXPECT_EQ(conv_param_count(128, 128, 4, 3), 36864u);
  EXPECT_EQ(conv_param_count(3, 128, 1, 3), 3456u);
  for (std::size_t c : {1u, 7u, 64u, 256u}) EXPECT_EQ(conv_param_count(c, c, c, 1), c);
}

TEST(ConvParamCount, IndivisibleGroups) {
  EXPECT_THROW(conv_param_count(3, 128, 4, 3), IndivisibleGroups);
  EXPECT_THROW(conv_param_count(128, 6, 4, 3), IndivisibleGroups);
  EXPECT_THROW(conv_param_count(8, 8, 0, 3), IndivisibleGroups);
}

TEST(ConvParamCount, GroupsDivideTheCount) {
  for (std::size_t g = 1; g <= 16; ++g) {
    for (std::size_t a = 1; a <= 8; ++a) {
      for (std::size_t b = 1; b <= 8; ++b) {
        for (std::size_t k : {1u, 3u, 5u}) {
          ASSERT_EQ(conv_param_count(a * g, b * g, g, k) * g,
                    conv_param_count(a * g, b * g, 1, k));
        }
      }
    }
  }
}

TEST(BuildResnet10, DefaultTopology) {
  const auto g = build_resnet10();
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.trainable_weight_layers(), 10u);
  ASSERT_EQ(g.layers.size(), 10u);  // 9 convolutions + 1 shortcut
  EXPECT_EQ(g.blocks.size(), 4u);
  EXPECT_EQ(g.layers[0].role, LayerRole::kEncode);
  EXPECT_EQ(g.layers[0].geometry.in_channels, 3u);
  EXPECT_EQ(g.layers[0].geometry.out_channels, 128u);
  EXPECT_EQ(g.layers[0].geometry.groups, 1u);
  EXPECT_EQ(g.layers[0].input_exponent, 7);

  std::size_t shortcuts = 0;
  for (const auto& l : g.layers) {
    if (l.role == LayerRole::kShortcut) {
      ++shortcuts;
      EXPECT_EQ(l.geometry.kernel, 1u);
      EXPECT_EQ(l.geometry.groups, 1u);
      EXPECT_EQ(l.geometry.stride, 2u);
      EXPECT_EQ(l.geometry.in_channels, 128u);
      EXPECT_EQ(l.geometry.out_channels, 256u);
    } else if (l.role == LayerRole::kMain) {
      EXPECT_EQ(l.geometry.groups, 4u);
      EXPECT_EQ(l.geometry.kernel, 3u);
    }
  }
  EXPECT_EQ(shortcuts, 1u);
  ASSERT_TRUE(g.fc.has_value());
  EXPECT_EQ(g.fc->in_features, 256u);
  EXPECT_EQ(g.fc->out_features, 10u);
  EXPECT_EQ(g.fc->pool_area, 256);

  for (const auto& b : g.blocks) {
    const auto& a = g.layers[b.conv_a];
    const auto& c = g.layers[b.conv_b];
    EXPECT_EQ(c.input_shape, a.output_shape());
    const Shape3 block_in = a.input_shape;
    if (b.shortcut) {
      EXPECT_EQ(g.layers[*b.shortcut].output_shape(), c.output_shape());
    } else {
      EXPECT_EQ(block_in, c.output_shape());
    }
  }
  EXPECT_EQ(g.layers[g.blocks.back().conv_b].output_shape(), (Shape3{256, 16, 16}));
}

TEST(CountParams, DefaultNearTargetValue) {
  const auto total = count_params(build_resnet10());
  EXPECT_EQ(total, 702336u);
  EXPECT_LE(std::abs(static_cast<double>(total) - 0.69e6) / 0.69e6, 0.05);
}

TEST(CountParams, PerLayerBreakdown) {
  const auto rows = param_breakdown(build_resnet10());
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0].name, "conv1");
  EXPECT_EQ(rows[0].grouped, 3456u);
  std::size_t sum = 0;
  for (const auto& r : rows) {
    sum += r.grouped;
    if (r.name == "conv2_1a") {
      EXPECT_EQ(r.grouped, 36864u);
      EXPECT_EQ(r.standard, 147456u);
    }
    if (r.name == "conv3_1a") {
      EXPECT_EQ(r.grouped, 73728u);
    }
    if (r.name == "conv3_1b") {
      EXPECT_EQ(r.grouped, 147456u);
    }
    if (r.name == "conv3_1sc") {
      EXPECT_EQ(r.grouped, 32768u);
    }
  }
  EXPECT_EQ(rows.back().name, "fc");
  EXPECT_EQ(rows.back().grouped, 2560u);
  EXPECT_EQ(sum, count_params(build_resnet10()));
}

TEST(CountParams, UngroupedIsFourTimesOnGroupedLayers) {
  NetworkConfig one;
  one.groups = 1;
  const auto g1 = build_resnet10(one);
  const auto g4 = build_resnet10();
  std::size_t grouped1 = 0, grouped4 = 0;
  for (std::size_t i = 0; i < g4.layers.size(); ++i) {
    if (g4.layers[i].role != LayerRole::kMain) continue;
    grouped4 += g4.layers[i].geometry.weight_count();
    grouped1 += g1.layers[i].geometry.weight_count();
  }
  EXPECT_EQ(grouped1, 4 * grouped4);
  EXPECT_EQ(count_params(g1), 2692992u);
}

TEST(CountParams, EmptyAndSingle) {
  EXPECT_EQ(count_params(NetworkGraph{}), 0u);
  auto g = build_resnet10();
  g.layers.resize(1);
  g.blocks.clear();
  g.fc.reset();
  EXPECT_EQ(count_params(g), 3456u);
  EXPECT_EQ(count_params(g, {.include_bias = true}), 3456u + 128u);
}

TEST(BuildResnet10, InvalidConfig) {
  NetworkConfig c;
  c.groups = 3;
  EXPECT_THROW(build_resnet10(c), IndivisibleGroups);
  NetworkConfig d;
  d.stage_channels.clear();
  EXPECT_THROW(build_resnet10(d), InvalidConfig);
}

TEST(NetworkGraph, ValidateCatchesShapeErrors) {
  auto g = build_resnet10();
  g.layers[2].input_shape = Shape3{128, 16, 16};
  EXPECT_THROW(g.validate(), ShapeMismatch);
}

TEST(NetworkGraph, ValidateCatchesScaleErrors) {
  auto g = make_random_model({}, 3);
  const auto& blk = g.blocks[2];
  ASSERT_TRUE(blk.shortcut.has_value());
  auto& sc = g.layers[*blk.shortcut];
  sc.weights = IntTensor(sc.weights.shape(),
                         {sc.weights.values().begin(), sc.weights.values().end()},
                         QuantParams(8, sc.weights.params().exponent() + 1));
  EXPECT_THROW(g.validate(), ScaleMismatch);
}

TEST(NetworkGraph, AccumulatorBoundHolds) {
  const auto g = make_random_model({}, 1);
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    EXPECT_LT(accumulator_bound(g, i), std::int64_t{1} << 31);
  }
  // Worst case of a grouped layer: 32 inputs x 9 taps x 128, plus the bias.
  const auto& l = g.layers[1];
  std::int64_t max_w = 0;
  for (auto w : l.weights.values()) max_w = std::max<std::int64_t>(max_w, std::abs(w));
  std::int64_t max_b = 0;
  for (auto b : l.bias) max_b = std::max<std::int64_t>(max_b, std::abs(b));
  EXPECT_EQ(accumulator_bound(g, 1), 32 * 9 * max_w + max_b);
}

TEST(LayerRole, StringRoundTrip) {
  for (auto r : {LayerRole::kEncode, LayerRole::kMain, LayerRole::kShortcut}) {
    EXPECT_EQ(layer_role_from_string(to_string(r)), r);
  }
  EXPECT_THROW(layer_role_from_string("pool"), InvalidConfig);
}
