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

// Independent reference implementations used only by the tests. Nothing here
// calls into the library's arithmetic; they share only plain data types.

#include <cstdint>
#include <vector>

#include "snnaccel/golden.hpp"
#include "snnaccel/network.hpp"

namespace oracle {

using snnaccel::ConvGeometry;
using snnaccel::Shape3;

/// Six nested loops over (o, y, x, i, ky, kx); out-of-range taps read zero.
std::vector<std::int64_t> conv_naive(const std::vector<std::int64_t>& x, const Shape3& in,
                                     const std::vector<std::int32_t>& w,
                                     const std::vector<std::int32_t>& bias,
                                     const ConvGeometry& g);

std::vector<double> conv_real(const std::vector<double>& x, const Shape3& in,
                              const std::vector<double>& w, const std::vector<double>& bias,
                              const ConvGeometry& g);

/// Smallest power-of-two exponent search: the largest n with
/// r_max * 2^n <= 2^(bits-1), by repeated doubling/halving.
int scale_exponent(double r_max, int bits);

/// Round half away from zero then clamp, computed on the exact rational
/// num / den * 2^n for integer inputs.
std::int32_t quantize_ratio(std::int64_t num, std::int64_t den, int n, int bits);

struct ForwardResult {
  std::vector<std::vector<std::uint8_t>> spikes;  // per layer, empty for shortcuts
  std::vector<double> scores;
  int label = 0;
};

/// Whole-network forward pass in double precision on dequantized values.
/// Every quantity is a dyadic rational small enough for doubles to hold
/// exactly, so decisions match the integer engine bit for bit.
ForwardResult forward_dequantized(const snnaccel::NetworkGraph& model,
                                  const snnaccel::Image& image);

}  // namespace oracle
