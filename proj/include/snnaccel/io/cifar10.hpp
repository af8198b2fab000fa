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
#include <string>
#include <vector>

#include "snnaccel/golden.hpp"

namespace snnaccel::io {

inline constexpr std::size_t kCifarPixels = 3 * 32 * 32;
inline constexpr std::size_t kCifarRecordBytes = 1 + kCifarPixels;
inline constexpr int kCifarClasses = 10;

struct Cifar10Record {
  int label = 0;
  Image image;

  bool operator==(const Cifar10Record&) const = default;
};

struct Cifar10Set {
  std::vector<Cifar10Record> records;

  std::size_t size() const { return records.size(); }
  std::vector<Image> images() const;
  std::vector<int> labels() const;
};

/// Binary batch format: per record one label byte then 1024 red, 1024
/// green and 1024 blue bytes. Throws CorruptFile when the length is zero or
/// not a whole number of records, BadLabel for labels above 9.
Cifar10Set parse_cifar10(std::span<const std::uint8_t> bytes);
Cifar10Set load_cifar10(const std::string& path);

std::vector<std::uint8_t> serialize_cifar10(const Cifar10Set& set);

}  // namespace snnaccel::io
