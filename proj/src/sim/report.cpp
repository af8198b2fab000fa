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

#include "snnaccel/sim/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace snnaccel::sim {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void kv(std::ostream& os, const char* key, const std::string& value) {
  os << key << " = " << value << '\n';
}

void kv(std::ostream& os, const char* key, std::int64_t value) {
  os << key << " = " << value << '\n';
}

}  // namespace

void write_report_header(std::ostream& os) {
  os << "# snnaccel-report v" << kReportVersion << '\n';
}

void write_pipeline_report(std::ostream& os, const PipelineReport& r) {
  os << "\n[pipeline]\n";
  kv(os, "clock_hz", fixed(r.clock_hz, 0));
  kv(os, "images", static_cast<std::int64_t>(r.images));
  kv(os, "stages", static_cast<std::int64_t>(r.stages.size()));
  kv(os, "latency_cycles", r.latency_cycles);
  kv(os, "ii_cycles", r.ii_cycles);
  kv(os, "total_cycles", r.total_cycles);
  kv(os, "latency_ms", fixed(r.latency_ms()));
  kv(os, "fps", fixed(r.fps()));
  kv(os, "fps_latency", fixed(r.fps_latency()));
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    const auto& s = r.stages[i];
    os << "\n[stage " << s.name << "]\n";
    std::string layers;
    for (const auto& l : s.layers) layers += (layers.empty() ? "" : ",") + l;
    kv(os, "layers", layers);
    kv(os, "cycles", s.cycles);
    kv(os, "occupancy", fixed(r.occupancy(i)));
  }
}

void write_resource_report(std::ostream& os, const ResourceReport& r) {
  for (const auto& l : r.layers) {
    os << "\n[resources " << l.name << "]\n";
    if (l.mac_units > 0 && l.name != "fc") kv(os, "geometry", l.geometry.str());
    kv(os, "mac_units", l.mac_units);
    kv(os, "multiplier_units", l.multiplier_units);
    kv(os, "weight_bits", l.weight_bits);
    kv(os, "bias_bits", l.bias_bits);
    kv(os, "feature_bits", l.feature_bits);
    kv(os, "macs", l.macs);
    kv(os, "gated_adds", l.gated_adds);
    kv(os, "bram_bit_accesses", l.bram_bit_accesses);
  }
  os << "\n[resources]\n";
  kv(os, "mac_units", r.mac_units);
  kv(os, "multiplier_units", r.multiplier_units);
  kv(os, "weight_bits", r.weight_bits);
  kv(os, "bias_bits", r.bias_bits);
  kv(os, "feature_bits", r.feature_bits);
  kv(os, "on_chip_bits", r.on_chip_bits);
  kv(os, "capacity_bits", r.capacity_bits);
  kv(os, "fits", std::string(r.fits() ? "true" : "false"));
  kv(os, "macs", r.macs);
  kv(os, "gated_adds", r.gated_adds);
  kv(os, "bram_bit_accesses", r.bram_bit_accesses);
  kv(os, "energy_proxy", fixed(r.energy_proxy, 3));
}

void write_timing_config(std::ostream& os, const TimingConfig& t) {
  os << "\n[timing]\n";
  for (const auto& [key, value] : t.fields()) kv(os, key.c_str(), fixed(value, 0));
}

}  // namespace snnaccel::sim
