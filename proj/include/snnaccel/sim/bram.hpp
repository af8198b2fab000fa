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
#include <map>
#include <set>
#include <string>
#include <vector>

namespace snnaccel::sim {

enum class Access { kRead, kWrite };

struct BramEvent {
  std::uint64_t seq = 0;
  std::size_t image = 0;
  std::int64_t cycle = 0;
  std::string layer;
  std::string buffer;
  Access kind = Access::kRead;
  std::int64_t bits = 0;
};

/// Capacity, ports and access counters of one logical buffer. No bank
/// conflicts are modeled.
struct BramBank {
  std::string name;
  std::int64_t capacity_bits = 0;
  int ports = 2;
  std::int64_t reads = 0;
  std::int64_t writes = 0;
  std::int64_t bits_read = 0;
  std::int64_t bits_written = 0;
};

/// On-chip memory: banks carved out of one capacity pool, plus an ordered
/// access trace.
class BramModel {
 public:
  explicit BramModel(std::int64_t capacity_bits);

  /// Throws CapacityExceeded if the pool would overflow. Re-allocating an
  /// existing name is a no-op when the size matches.
  BramBank& allocate(const std::string& name, std::int64_t bits, int ports = 2);
  bool has(const std::string& name) const { return banks_.count(name) != 0; }
  const BramBank& bank(const std::string& name) const;

  void read(std::size_t image, std::int64_t cycle, const std::string& layer,
            const std::string& buffer, std::int64_t bits);
  void write(std::size_t image, std::int64_t cycle, const std::string& layer,
             const std::string& buffer, std::int64_t bits);
  /// Counter update without a trace event (weight preload).
  void preload(const std::string& buffer, std::int64_t bits);

  std::int64_t capacity_bits() const { return capacity_; }
  std::int64_t occupancy_bits() const { return occupancy_; }
  std::int64_t bit_accesses() const;
  const std::vector<BramEvent>& trace() const { return trace_; }
  const std::map<std::string, BramBank>& banks() const { return banks_; }
  /// Buffers filled before the first image, resident for every image.
  const std::set<std::string>& preloaded() const { return preloaded_; }
  void set_tracing(bool on) { tracing_ = on; }

 private:
  BramBank& mutable_bank(const std::string& name);

  std::int64_t capacity_;
  std::int64_t occupancy_ = 0;
  std::map<std::string, BramBank> banks_;
  std::vector<BramEvent> trace_;
  std::set<std::string> preloaded_;
  std::uint64_t seq_ = 0;
  bool tracing_ = true;
};

/// For each (image, buffer): every read happens at or after the last write.
/// Buffers in `resident` count as written before cycle 0. On failure `why`
/// names the first offending buffer.
bool trace_is_causal(const std::vector<BramEvent>& trace, std::string* why = nullptr,
                     const std::set<std::string>& resident = {});
bool trace_is_causal(const BramModel& bram, std::string* why = nullptr);

}  // namespace snnaccel::sim
