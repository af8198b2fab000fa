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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "snnaccel/quant.hpp"

namespace snnaccel {

/// (channels, height, width) extents of a feature map.
struct Shape3 {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t size() const { return channels * height * width; }
  std::size_t plane() const { return height * width; }
  std::size_t index(std::size_t c, std::size_t y, std::size_t x) const {
    return (c * height + y) * width + x;
  }
  bool operator==(const Shape3&) const = default;
};

std::size_t element_count(std::span<const std::size_t> shape);

class RealTensor {
 public:
  RealTensor() = default;
  RealTensor(std::vector<std::size_t> shape, std::vector<double> values);
  /// Zero-filled tensor.
  explicit RealTensor(std::vector<std::size_t> shape);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  bool operator==(const RealTensor&) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

/// Signed fixed-point tensor. Every value lies in the signed range of
/// params().bits; the constructor rejects anything else.
class IntTensor {
 public:
  IntTensor() = default;
  IntTensor(std::vector<std::size_t> shape, std::vector<std::int32_t> values,
            QuantParams params);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::span<const std::int32_t> values() const { return values_; }
  const QuantParams& params() const { return params_; }
  std::size_t size() const { return values_.size(); }
  std::int32_t operator[](std::size_t i) const { return values_[i]; }

  /// Views a rank-3 tensor as a feature map.
  Shape3 shape3() const;

  bool operator==(const IntTensor&) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::int32_t> values_;
  QuantParams params_;
};

/// Binary activation map.
class SpikeMap {
 public:
  SpikeMap() = default;
  explicit SpikeMap(Shape3 shape);
  SpikeMap(Shape3 shape, std::vector<std::uint8_t> values);

  const Shape3& shape() const { return shape_; }
  std::span<const std::uint8_t> values() const { return values_; }
  std::uint8_t at(std::size_t c, std::size_t y, std::size_t x) const {
    return values_[shape_.index(c, y, x)];
  }
  void set(std::size_t c, std::size_t y, std::size_t x, bool spike) {
    values_[shape_.index(c, y, x)] = spike ? 1 : 0;
  }
  std::size_t count() const;

  bool operator==(const SpikeMap&) const = default;

 private:
  Shape3 shape_;
  std::vector<std::uint8_t> values_;
};

/// Convolution output before thresholding, in accumulator scale
/// 2^scale_exponent (weight exponent plus input exponent).
struct AccumulatorMap {
  Shape3 shape;
  int scale_exponent = 0;
  std::vector<std::int32_t> values;

  AccumulatorMap() = default;
  AccumulatorMap(Shape3 s, int exponent)
      : shape(s), scale_exponent(exponent), values(s.size(), 0) {}

  std::int32_t at(std::size_t c, std::size_t y, std::size_t x) const {
    return values[shape.index(c, y, x)];
  }
  bool operator==(const AccumulatorMap&) const = default;
};

}  // namespace snnaccel
