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

#include "snnaccel/quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "snnaccel/errors.hpp"
#include "snnaccel/tensor.hpp"

namespace snnaccel {

namespace {

// Keeps 2^exponent and its reciprocal finite and exact in double.
constexpr int kMaxExponentMagnitude = 1000;

}  // namespace

QuantParams::QuantParams(int bits, int exponent)
    : bits_(bits), exponent_(exponent) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw InvalidParams("bit width " + std::to_string(bits) +
                        " outside [2, 16]");
  }
  if (std::abs(exponent) > kMaxExponentMagnitude) {
    throw InvalidParams("scale exponent " + std::to_string(exponent) +
                        " out of range");
  }
}

double QuantParams::scale() const { return std::ldexp(1.0, exponent_); }

QuantParams compute_scale(double r_max, int bits) {
  if (!std::isfinite(r_max) || r_max < 0.0) {
    throw InvalidParams("r_max must be finite and non-negative");
  }
  if (r_max == 0.0) {
    throw DegenerateRange("r_max is zero (all-zero tensor)");
  }
  if (bits < kMinBits || bits > kMaxBits) {
    throw InvalidParams("bit width " + std::to_string(bits) +
                        " outside [2, 16]");
  }
  // r_max = m * 2^e with m in [0.5, 1), so 2^(bits-1) / r_max = 2^(bits-1-e)/m
  // and 1/m lies in (1, 2]. The floor of its log2 is bits-1-e, plus one
  // exactly when m == 0.5.
  int e = 0;
  const double m = std::frexp(r_max, &e);
  const int n = (m == 0.5) ? bits - e : bits - 1 - e;
  return QuantParams(bits, n);
}

QuantParams compute_scale_or_default(double r_max, int bits) {
  if (r_max == 0.0) return QuantParams(bits, bits - 1);
  return compute_scale(r_max, bits);
}

std::int32_t quantize_value(double r, const QuantParams& p) {
  if (std::isnan(r)) throw InvalidParams("cannot quantize NaN");
  const double lo = p.min_code();
  const double hi = p.max_code();
  const double scaled = std::clamp(std::ldexp(r, p.exponent()), lo, hi);
  return static_cast<std::int32_t>(std::round(scaled));
}

double dequantize_value(std::int32_t q, const QuantParams& p) {
  return std::ldexp(static_cast<double>(q), -p.exponent());
}

IntTensor quantize(const RealTensor& t, const QuantParams& p) {
  std::vector<std::int32_t> q(t.size());
  const auto values = t.values();
  std::transform(values.begin(), values.end(), q.begin(),
                 [&](double r) { return quantize_value(r, p); });
  return IntTensor(t.shape(), std::move(q), p);
}

RealTensor dequantize(const IntTensor& t) {
  std::vector<double> r(t.size());
  const auto values = t.values();
  std::transform(values.begin(), values.end(), r.begin(),
                 [&](std::int32_t q) { return dequantize_value(q, t.params()); });
  return RealTensor(t.shape(), std::move(r));
}

double max_abs(const RealTensor& t) {
  double m = 0.0;
  for (double v : t.values()) m = std::max(m, std::abs(v));
  return m;
}

RealTensor fake_quantize(const RealTensor& t, int bits) {
  return dequantize(quantize(t, compute_scale_or_default(max_abs(t), bits)));
}

std::int32_t to_accumulator_scale(double r, int exponent) {
  if (std::isnan(r)) throw InvalidParams("cannot quantize NaN");
  constexpr double lo = std::numeric_limits<std::int32_t>::min();
  constexpr double hi = std::numeric_limits<std::int32_t>::max();
  return static_cast<std::int32_t>(
      std::round(std::clamp(std::ldexp(r, exponent), lo, hi)));
}

}  // namespace snnaccel
