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

// Random inputs shared by the test suites.

#include <cstdint>
#include <vector>

#include "snnaccel/model_prep.hpp"
#include "snnaccel/network.hpp"
#include "snnaccel/tensor.hpp"

namespace fixtures {

inline snnaccel::ConvLayerSpec random_layer(snnaccel::Rng& rng,
                                            const snnaccel::ConvGeometry& g,
                                            const snnaccel::Shape3& input, int bits = 8,
                                            snnaccel::LayerRole role = snnaccel::LayerRole::kMain,
                                            int input_exponent = 0) {
  snnaccel::ConvLayerSpec l;
  l.name = "layer";
  l.role = role;
  l.geometry = g;
  l.input_shape = input;
  const snnaccel::QuantParams p(bits, bits - 1);
  std::vector<std::int32_t> w(g.weight_count());
  for (auto& v : w) v = static_cast<std::int32_t>(rng.integer(p.min_code(), p.max_code()));
  l.weights = snnaccel::IntTensor({g.out_channels, g.in_per_group(), g.kernel, g.kernel},
                                  std::move(w), p);
  l.bias.resize(g.out_channels);
  for (auto& b : l.bias) b = static_cast<std::int32_t>(rng.integer(-1000, 1000));
  l.input_exponent = input_exponent;
  l.threshold = static_cast<std::int32_t>(rng.integer(-50, 200));
  return l;
}

inline snnaccel::SpikeMap random_spikes(snnaccel::Rng& rng, const snnaccel::Shape3& s,
                                        double rate = 0.3) {
  std::vector<std::uint8_t> v(s.size());
  for (auto& x : v) x = rng.uniform(0.0, 1.0) < rate ? 1 : 0;
  return snnaccel::SpikeMap(s, std::move(v));
}

inline snnaccel::IntTensor random_codes(snnaccel::Rng& rng, const snnaccel::Shape3& s,
                                        const snnaccel::QuantParams& p) {
  std::vector<std::int32_t> v(s.size());
  for (auto& x : v) x = static_cast<std::int32_t>(rng.integer(p.min_code(), p.max_code()));
  return snnaccel::IntTensor({s.channels, s.height, s.width}, std::move(v), p);
}

inline std::vector<std::int64_t> widen(std::span<const std::uint8_t> v) {
  return {v.begin(), v.end()};
}

inline std::vector<std::int64_t> widen(std::span<const std::int32_t> v) {
  return {v.begin(), v.end()};
}

inline std::vector<std::int32_t> flat_weights(const snnaccel::ConvLayerSpec& l) {
  return {l.weights.values().begin(), l.weights.values().end()};
}

}  // namespace fixtures
