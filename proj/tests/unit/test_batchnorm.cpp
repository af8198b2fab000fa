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

#include "oracle/oracle.hpp"
#include "snnaccel/batchnorm.hpp"
#include "snnaccel/errors.hpp"
#include "snnaccel/model_prep.hpp"

using namespace snnaccel;

TEST(BnForward, IdentityNormalization) {
  const BnParams p{1.0, 0.0, 0.0, 1.0 - 1e-5, 1e-5};
  for (double y : {-3.0, 0.0, 0.25, 7.5}) EXPECT_DOUBLE_EQ(bn_forward(y, p), y);
}

TEST(BnForward, CenteredInputGivesBeta) {
  const BnParams p{2.5, -0.75, 0.4, 3.0, 1e-5};
  EXPECT_EQ(bn_forward(0.4, p), -0.75);
}

TEST(BnForward, HandEvaluation) {
  const BnParams p{2.0, 1.0, 0.5, 0.25, 1e-300};
  EXPECT_DOUBLE_EQ(bn_forward(1.0, p), 3.0);
}

TEST(BnForward, Tensor) {
  const BnParams p{2.0, 1.0, 0.5, 0.25, 1e-300};
  const auto r = bn_forward(RealTensor({2}, {1.0, 0.5}), p);
  EXPECT_DOUBLE_EQ(r[0], 3.0);
  EXPECT_DOUBLE_EQ(r[1], 1.0);
}

TEST(BnParams, Validation) {
  EXPECT_THROW((BnParams{1, 0, 0, -1, 1e-5}).validate(), InvalidParams);
  EXPECT_THROW((BnParams{1, 0, 0, 1, 0}).validate(), InvalidParams);
}

TEST(FuseBn, IdentityKeepsWeights) {
  const std::vector<double> w{0.5, -1.25, 2.0};
  const auto f = fuse_bn(w, 0.3, BnParams{1.0, 0.0, 0.0, 1.0 - 1e-5, 1e-5});
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_DOUBLE_EQ(f.weights[i], w[i]);
  EXPECT_DOUBLE_EQ(f.bias, 0.3);
}

TEST(FuseBn, ConstantBranch) {
  const BnParams p{1.7, 0.9, 0.35, 2.0, 1e-5};
  const auto f = fuse_bn(std::vector<double>{0.0, 0.0}, 0.35, p);
  EXPECT_EQ(f.weights[0], 0.0);
  EXPECT_EQ(f.weights[1], 0.0);
  EXPECT_DOUBLE_EQ(f.bias, 0.9);
}

// Relative error of a whole output map: max |a - b| over max |a|. Single
// near-zero outputs suffer cancellation in both paths and say nothing about
// the folding.
double map_rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, mag = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    mag = std::max(mag, std::abs(a[i]));
  }
  return mag == 0.0 ? diff : diff / mag;
}

TEST(FuseBn, EquivalentToConvThenBn) {
  Rng rng(42);
  double worst = 0.0;
  for (int layer = 0; layer < 100; ++layer) {
    ConvGeometry g;
    g.groups = static_cast<std::size_t>(1) << rng.integer(0, 2);
    g.in_channels = g.groups * static_cast<std::size_t>(rng.integer(1, 3));
    g.out_channels = g.groups * static_cast<std::size_t>(rng.integer(1, 3));
    g.kernel = rng.integer(0, 1) ? 3 : 1;
    g.padding = g.kernel / 2;
    g.stride = static_cast<std::size_t>(rng.integer(1, 2));
    const Shape3 in{g.in_channels, 5, 5};
    std::vector<double> w(g.weight_count()), b(g.out_channels);
    for (auto& v : w) v = rng.uniform(-1.0, 1.0);
    for (auto& v : b) v = rng.uniform(-1.0, 1.0);
    std::vector<BnParams> bn(g.out_channels);
    for (auto& p : bn) {
      p = {rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5),
           rng.uniform(0.05, 3.0), 1e-5};
    }
    std::vector<double> fw, fb;
    const std::size_t per_out = w.size() / g.out_channels;
    for (std::size_t o = 0; o < g.out_channels; ++o) {
      const auto f = fuse_bn(std::span<const double>(w).subspan(o * per_out, per_out),
                             b[o], bn[o]);
      fw.insert(fw.end(), f.weights.begin(), f.weights.end());
      fb.push_back(f.bias);
    }
    for (int input = 0; input < 100; ++input) {
      std::vector<double> x(in.size());
      for (auto& v : x) v = rng.uniform(-1.0, 1.0);
      const auto y = oracle::conv_real(x, in, w, b, g);
      const auto fused = oracle::conv_real(x, in, fw, fb, g);
      const std::size_t plane = y.size() / g.out_channels;
      std::vector<double> ref(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) ref[i] = bn_forward(y[i], bn[i / plane]);
      worst = std::max(worst, map_rel_err(ref, fused));
    }
  }
  EXPECT_LT(worst, 1e-10);
}
