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

#include "snnaccel/io/packing.hpp"

#include "snnaccel/errors.hpp"

namespace snnaccel::io {

std::int32_t PackedWeights::value(std::size_t i) const {
  if (element_bytes == 1) return static_cast<std::int8_t>(bytes[i]);
  const auto lo = static_cast<std::uint16_t>(bytes[2 * i]);
  const auto hi = static_cast<std::uint16_t>(bytes[2 * i + 1]);
  return static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
}

namespace {

void append(std::vector<std::uint8_t>& out, std::int32_t v, std::size_t element_bytes) {
  const auto u = static_cast<std::uint32_t>(v);
  for (std::size_t b = 0; b < element_bytes; ++b) {
    out.push_back(static_cast<std::uint8_t>((u >> (8 * b)) & 0xff));
  }
}

}  // namespace

PackedWeights pack_weights(const ConvLayerSpec& layer, const sim::PeArrayGeometry& geom) {
  const auto schedule = sim::tile_layer(layer, geom);
  PackedWeights p;
  p.conv = layer.geometry;
  p.array = geom;
  p.params = layer.weights.params();
  p.element_bytes = p.params.bits() <= 8 ? 1 : 2;
  const auto ipg = layer.geometry.in_per_group();
  const auto k = layer.geometry.kernel;
  std::size_t offset = 0;
  for (const auto& t : schedule.tiles) {
    const std::size_t count = t.out_count * t.in_count * k * k;
    p.segments.push_back({offset, count});
    for (std::size_t c = 0; c < t.out_count; ++c) {
      for (std::size_t r = 0; r < t.in_count; ++r) {
        const std::size_t in_group_ch = t.in_begin + r - t.group * ipg;
        for (std::size_t ky = 0; ky < k; ++ky) {
          for (std::size_t kx = 0; kx < k; ++kx) {
            append(p.bytes, layer.weight(t.out_begin + c, in_group_ch, ky, kx),
                   p.element_bytes);
          }
        }
      }
    }
    offset += count;
  }
  return p;
}

IntTensor unpack_weights(const PackedWeights& packed) {
  ConvLayerSpec probe;
  probe.name = "unpack";
  probe.geometry = packed.conv;
  probe.input_shape = {packed.conv.in_channels, packed.conv.kernel, packed.conv.kernel};
  probe.weights = IntTensor({packed.conv.out_channels, packed.conv.in_per_group(),
                             packed.conv.kernel, packed.conv.kernel},
                            std::vector<std::int32_t>(packed.conv.weight_count(), 0),
                            packed.params);
  const auto schedule = sim::tile_layer(probe, packed.array);
  if (schedule.tiles.size() != packed.segments.size() ||
      packed.elements() != packed.conv.weight_count() ||
      packed.bytes.size() % packed.element_bytes != 0) {
    throw GeometryMismatch("packed weights do not match their schedule");
  }
  const auto ipg = packed.conv.in_per_group();
  const auto k = packed.conv.kernel;
  std::vector<std::int32_t> logical(packed.conv.weight_count(), 0);
  for (std::size_t s = 0; s < schedule.tiles.size(); ++s) {
    const auto& t = schedule.tiles[s];
    WeightStream in(packed, s);
    for (std::size_t c = 0; c < t.out_count; ++c) {
      for (std::size_t r = 0; r < t.in_count; ++r) {
        const std::size_t i = t.in_begin + r - t.group * ipg;
        for (std::size_t tap = 0; tap < k * k; ++tap) {
          logical[((t.out_begin + c) * ipg + i) * k * k + tap] = in.next();
        }
      }
    }
  }
  return IntTensor({packed.conv.out_channels, ipg, k, k}, std::move(logical),
                   packed.params);
}

WeightStream::WeightStream(const PackedWeights& packed, std::size_t segment)
    : packed_(&packed) {
  if (segment >= packed.segments.size()) {
    throw GeometryMismatch("no weight segment " + std::to_string(segment));
  }
  pos_ = packed.segments[segment].offset;
  end_ = pos_ + packed.segments[segment].count;
  if (end_ > packed.elements()) throw GeometryMismatch("weight segment out of range");
}

std::int32_t WeightStream::next() {
  if (pos_ == end_) throw GeometryMismatch("read past the end of a weight segment");
  return packed_->value(pos_++);
}

}  // namespace snnaccel::io
