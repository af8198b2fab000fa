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

#include "snnaccel/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "snnaccel/errors.hpp"

namespace snnaccel {

std::size_t element_count(std::span<const std::size_t> shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

RealTensor::RealTensor(std::vector<std::size_t> shape,
                       std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (element_count(shape_) != values_.size()) {
    throw ShapeMismatch("real tensor has " + std::to_string(values_.size()) +
                        " values for " + std::to_string(element_count(shape_)) +
                        " elements");
  }
}

RealTensor::RealTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), values_(element_count(shape_), 0.0) {}

IntTensor::IntTensor(std::vector<std::size_t> shape,
                     std::vector<std::int32_t> values, QuantParams params)
    : shape_(std::move(shape)), values_(std::move(values)), params_(params) {
  if (element_count(shape_) != values_.size()) {
    throw ShapeMismatch("int tensor has " + std::to_string(values_.size()) +
                        " values for " + std::to_string(element_count(shape_)) +
                        " elements");
  }
  const auto lo = params_.min_code();
  const auto hi = params_.max_code();
  for (auto v : values_) {
    if (v < lo || v > hi) {
      throw InvalidParams("value " + std::to_string(v) + " outside " +
                          std::to_string(params_.bits()) + "-bit range");
    }
  }
}

Shape3 IntTensor::shape3() const {
  if (shape_.size() != 3) {
    throw ShapeMismatch("expected a rank-3 tensor, got rank " +
                        std::to_string(shape_.size()));
  }
  return {shape_[0], shape_[1], shape_[2]};
}

SpikeMap::SpikeMap(Shape3 shape) : shape_(shape), values_(shape.size(), 0) {}

SpikeMap::SpikeMap(Shape3 shape, std::vector<std::uint8_t> values)
    : shape_(shape), values_(std::move(values)) {
  if (values_.size() != shape_.size()) {
    throw ShapeMismatch("spike map value count does not match its shape");
  }
  if (std::any_of(values_.begin(), values_.end(),
                  [](std::uint8_t v) { return v > 1; })) {
    throw InvalidParams("spike map values must be 0 or 1");
  }
}

std::size_t SpikeMap::count() const {
  return static_cast<std::size_t>(
      std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

}  // namespace snnaccel
