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

#include "snnaccel/sim/bram.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "snnaccel/errors.hpp"

namespace snnaccel::sim {

BramModel::BramModel(std::int64_t capacity_bits) : capacity_(capacity_bits) {
  if (capacity_bits < 0) throw InvalidConfig("BRAM capacity must be non-negative");
}

BramBank& BramModel::allocate(const std::string& name, std::int64_t bits, int ports) {
  if (auto it = banks_.find(name); it != banks_.end()) {
    if (it->second.capacity_bits != bits) {
      throw InvalidConfig("buffer '" + name + "' re-allocated with a different size");
    }
    return it->second;
  }
  if (bits < 0 || occupancy_ + bits > capacity_) {
    throw CapacityExceeded("buffer '" + name + "' needs " + std::to_string(bits) +
                           " bits, " + std::to_string(capacity_ - occupancy_) +
                           " of " + std::to_string(capacity_) + " remain");
  }
  occupancy_ += bits;
  BramBank b;
  b.name = name;
  b.capacity_bits = bits;
  b.ports = ports;
  return banks_.emplace(name, std::move(b)).first->second;
}

const BramBank& BramModel::bank(const std::string& name) const {
  auto it = banks_.find(name);
  if (it == banks_.end()) throw InvalidConfig("no BRAM buffer named '" + name + "'");
  return it->second;
}

BramBank& BramModel::mutable_bank(const std::string& name) {
  auto it = banks_.find(name);
  if (it == banks_.end()) throw InvalidConfig("no BRAM buffer named '" + name + "'");
  return it->second;
}

void BramModel::read(std::size_t image, std::int64_t cycle, const std::string& layer,
                     const std::string& buffer, std::int64_t bits) {
  auto& b = mutable_bank(buffer);
  ++b.reads;
  b.bits_read += bits;
  if (tracing_) trace_.push_back({seq_++, image, cycle, layer, buffer, Access::kRead, bits});
}

void BramModel::write(std::size_t image, std::int64_t cycle, const std::string& layer,
                      const std::string& buffer, std::int64_t bits) {
  auto& b = mutable_bank(buffer);
  if (bits > b.capacity_bits) {
    throw CapacityExceeded("write of " + std::to_string(bits) + " bits into '" +
                           buffer + "'");
  }
  ++b.writes;
  b.bits_written += bits;
  if (tracing_) trace_.push_back({seq_++, image, cycle, layer, buffer, Access::kWrite, bits});
}

void BramModel::preload(const std::string& buffer, std::int64_t bits) {
  auto& b = mutable_bank(buffer);
  preloaded_.insert(buffer);
  ++b.writes;
  b.bits_written += bits;
}

std::int64_t BramModel::bit_accesses() const {
  std::int64_t total = 0;
  for (const auto& [name, b] : banks_) total += b.bits_read + b.bits_written;
  return total;
}

bool trace_is_causal(const std::vector<BramEvent>& trace, std::string* why,
                     const std::set<std::string>& resident) {
  struct Window {
    std::int64_t last_write = std::numeric_limits<std::int64_t>::min();
    std::int64_t first_read = std::numeric_limits<std::int64_t>::max();
    bool written = false;
    bool read = false;
  };
  std::map<std::pair<std::size_t, std::string>, Window> windows;
  for (const auto& e : trace) {
    auto& w = windows[{e.image, e.buffer}];
    if (e.kind == Access::kWrite) {
      w.written = true;
      w.last_write = std::max(w.last_write, e.cycle);
    } else {
      w.read = true;
      w.first_read = std::min(w.first_read, e.cycle);
    }
  }
  for (const auto& [key, w] : windows) {
    if (!w.written && resident.count(key.second) != 0) continue;
    if (w.read && (!w.written || w.first_read < w.last_write)) {
      if (why) {
        *why = "image " + std::to_string(key.first) + " buffer '" + key.second +
               "' read at cycle " + std::to_string(w.first_read) +
               (w.written ? " before its last write at " + std::to_string(w.last_write)
                          : " without being written");
      }
      return false;
    }
  }
  return true;
}

bool trace_is_causal(const BramModel& bram, std::string* why) {
  return trace_is_causal(bram.trace(), why, bram.preloaded());
}

}  // namespace snnaccel::sim
