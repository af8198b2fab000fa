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

#include "snnaccel/io/cifar10.hpp"

#include "snnaccel/errors.hpp"
#include "snnaccel/io/model_file.hpp"

namespace snnaccel::io {

std::vector<Image> Cifar10Set::images() const {
  std::vector<Image> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.image);
  return out;
}

std::vector<int> Cifar10Set::labels() const {
  std::vector<int> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.label);
  return out;
}

Cifar10Set parse_cifar10(std::span<const std::uint8_t> bytes) {
  if (bytes.empty() || bytes.size() % kCifarRecordBytes != 0) {
    throw CorruptFile("CIFAR-10 batch of " + std::to_string(bytes.size()) +
                      " bytes is not a whole number of 3073-byte records");
  }
  Cifar10Set set;
  const std::size_t n = bytes.size() / kCifarRecordBytes;
  set.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto* rec = bytes.data() + i * kCifarRecordBytes;
    if (rec[0] >= kCifarClasses) {
      throw BadLabel("record " + std::to_string(i) + " has label " +
                     std::to_string(rec[0]));
    }
    Cifar10Record r;
    r.label = rec[0];
    r.image.shape = Shape3{3, 32, 32};
    r.image.pixels.assign(rec + 1, rec + kCifarRecordBytes);
    set.records.push_back(std::move(r));
  }
  return set;
}

Cifar10Set load_cifar10(const std::string& path) {
  return parse_cifar10(read_file_bytes(path));
}

std::vector<std::uint8_t> serialize_cifar10(const Cifar10Set& set) {
  std::vector<std::uint8_t> out;
  out.reserve(set.records.size() * kCifarRecordBytes);
  for (const auto& r : set.records) {
    if (r.label < 0 || r.label >= kCifarClasses) {
      throw BadLabel("label " + std::to_string(r.label));
    }
    if (r.image.pixels.size() != kCifarPixels ||
        !(r.image.shape == Shape3{3, 32, 32})) {
      throw ShapeMismatch("CIFAR-10 images are 3x32x32");
    }
    out.push_back(static_cast<std::uint8_t>(r.label));
    out.insert(out.end(), r.image.pixels.begin(), r.image.pixels.end());
  }
  return out;
}

}  // namespace snnaccel::io
