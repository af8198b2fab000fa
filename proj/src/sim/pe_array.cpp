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

#include "snnaccel/sim/pe_array.hpp"

#include <algorithm>

#include "snnaccel/errors.hpp"

namespace snnaccel::sim {

FeatureBuffer from_spikes(const SpikeMap& s) {
  FeatureBuffer b;
  b.shape = s.shape();
  b.values.assign(s.values().begin(), s.values().end());
  b.bits_per_value = 1;
  return b;
}

FeatureBuffer from_pixels(const IntTensor& q) {
  FeatureBuffer b;
  b.shape = q.shape3();
  b.values.assign(q.values().begin(), q.values().end());
  b.bits_per_value = q.params().bits();
  b.scale_exponent = q.params().exponent();
  return b;
}

FeatureBuffer pad_buffer(const FeatureBuffer& in, std::size_t p) {
  FeatureBuffer out;
  out.bits_per_value = in.bits_per_value;
  out.scale_exponent = in.scale_exponent;
  out.shape = {in.shape.channels, in.shape.height + 2 * p, in.shape.width + 2 * p};
  out.values.assign(out.shape.size(), 0);
  for (std::size_t c = 0; c < in.shape.channels; ++c) {
    for (std::size_t y = 0; y < in.shape.height; ++y) {
      for (std::size_t x = 0; x < in.shape.width; ++x) {
        out.values[out.shape.index(c, y + p, x + p)] = in.values[in.shape.index(c, y, x)];
      }
    }
  }
  return out;
}

PeArrayRun run_pe_array(const Tile& tile, io::WeightStream weights,
                        const FeatureBuffer& padded, const ConvGeometry& conv,
                        const PeArrayGeometry& geom, const TimingConfig& timing) {
  if (tile.out_count > geom.core_cols || tile.in_count > geom.core_rows) {
    throw GeometryMismatch("tile larger than the PE array");
  }
  const auto k = conv.kernel;
  if (weights.remaining() != tile.out_count * tile.in_count * k * k) {
    throw GeometryMismatch("weight segment does not match the tile");
  }
  if (padded.shape.height < k || padded.shape.width < k) {
    throw ShapeMismatch("padded input smaller than the kernel");
  }
  const std::size_t oh = (padded.shape.height - k) / conv.stride + 1;
  const std::size_t ow = (padded.shape.width - k) / conv.stride + 1;
  const std::size_t plane = oh * ow;

  if (!geom.uses_multipliers) {
    const auto first = padded.values.begin() +
                       static_cast<std::ptrdiff_t>(padded.shape.index(tile.in_begin, 0, 0));
    const auto last = first + static_cast<std::ptrdiff_t>(tile.in_count * padded.shape.plane());
    if (std::any_of(first, last, [](std::int32_t s) { return (s & ~1) != 0; })) {
      throw InvalidConfig("spike-gated array fed a multi-bit input");
    }
  }

  PeArrayRun run;
  run.partial.out_begin = tile.out_begin;
  run.partial.shape = {tile.out_count, oh, ow};
  run.partial.values.assign(tile.out_count * plane, 0);

  // Core (r, c) holds the k x k kernel linking input channel in_begin + r to
  // output channel out_begin + c; the column's adder tree sums its rows.
  std::vector<std::int32_t> kernel(k * k);
  for (std::size_t c = 0; c < tile.out_count; ++c) {
    std::int32_t* fsum = run.partial.values.data() + c * plane;
    for (std::size_t r = 0; r < tile.in_count; ++r) {
      for (auto& w : kernel) w = weights.next();
      const std::size_t ch = tile.in_begin + r;
      for (std::size_t ky = 0; ky < k; ++ky) {
        for (std::size_t kx = 0; kx < k; ++kx) {
          const std::int32_t w = kernel[ky * k + kx];
          for (std::size_t oy = 0; oy < oh; ++oy) {
            const std::int32_t* row =
                padded.values.data() + padded.shape.index(ch, oy * conv.stride + ky, kx);
            std::int32_t* out = fsum + oy * ow;
            if (geom.uses_multipliers) {
              for (std::size_t ox = 0; ox < ow; ++ox) out[ox] += w * row[ox * conv.stride];
            } else {
              std::int32_t fired = 0;
              for (std::size_t ox = 0; ox < ow; ++ox) {
                const std::int32_t s = row[ox * conv.stride];
                out[ox] += w & -s;
                fired += s;
              }
              run.activity.gated_adds += fired;
            }
          }
        }
      }
    }
  }
  const auto slots = static_cast<std::int64_t>(tile.out_count * tile.in_count * k * k * plane);
  if (geom.uses_multipliers) {
    run.activity.macs = slots;
  } else {
    run.activity.gated_slots = slots;
  }
  run.compute_cycles = static_cast<std::int64_t>(plane);
  run.overhead_cycles = timing.weight_switch_cycles + timing.pipeline_fill_cycles;
  return run;
}

PartialSums accumulate_group(std::span<const PartialSums> partials) {
  if (partials.empty()) throw ShapeMismatch("no partial sums to accumulate");
  PartialSums out = partials.front();
  for (std::size_t i = 1; i < partials.size(); ++i) {
    const auto& p = partials[i];
    if (p.shape != out.shape || p.out_begin != out.out_begin) {
      throw ShapeMismatch("partial sums cover different outputs");
    }
    for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += p.values[j];
  }
  return out;
}

}  // namespace snnaccel::sim
