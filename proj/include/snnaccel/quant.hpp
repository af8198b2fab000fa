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

namespace snnaccel {

class RealTensor;
class IntTensor;

/// Symmetric power-of-two quantization parameters: a k-bit signed code q
/// represents the real value q / 2^exponent.
class QuantParams {
 public:
  QuantParams() = default;
  /// Throws InvalidParams unless 2 <= bits <= 16.
  QuantParams(int bits, int exponent);

  int bits() const { return bits_; }
  int exponent() const { return exponent_; }
  /// 2^exponent, exact.
  double scale() const;
  std::int32_t min_code() const { return -(std::int32_t{1} << (bits_ - 1)); }
  std::int32_t max_code() const { return (std::int32_t{1} << (bits_ - 1)) - 1; }

  bool operator==(const QuantParams&) const = default;

 private:
  int bits_ = 8;
  int exponent_ = 0;
};

inline constexpr int kMinBits = 2;
inline constexpr int kMaxBits = 16;

/// n = floor(log2(2^(bits-1) / r_max)), evaluated exactly.
/// Throws DegenerateRange when r_max == 0 and InvalidParams for negative or
/// non-finite r_max.
QuantParams compute_scale(double r_max, int bits);

/// compute_scale, except an all-zero range maps to exponent bits-1 so zero
/// tensors stay zero. This is what model preparation uses.
QuantParams compute_scale_or_default(double r_max, int bits);

/// Round half away from zero, then saturate to the signed range.
std::int32_t quantize_value(double r, const QuantParams& p);
double dequantize_value(std::int32_t q, const QuantParams& p);

IntTensor quantize(const RealTensor& t, const QuantParams& p);
RealTensor dequantize(const IntTensor& t);

/// dequantize(quantize(t, scale of max|t|)). Identity under the
/// straight-through estimator for gradient purposes.
RealTensor fake_quantize(const RealTensor& t, int bits);

double max_abs(const RealTensor& t);

/// Round half away from zero into int32 at scale 2^exponent, saturating at
/// the int32 limits. Used for fused biases and thresholds.
std::int32_t to_accumulator_scale(double r, int exponent);

}  // namespace snnaccel
