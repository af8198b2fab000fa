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

#include "snnaccel/neuron.hpp"

#include "snnaccel/errors.hpp"

namespace snnaccel {

void LifParams::validate() const {
  if (!(tau > 0.0) || !(dt > 0.0)) {
    throw InvalidParams("LIF tau and dt must be positive");
  }
  if (dt > tau) throw InvalidParams("LIF dt must not exceed tau");
}

LifStep lif_step(double potential, double current, const LifParams& p) {
  p.validate();
  const double u = potential + (p.dt / p.tau) * (-potential + p.resistance * current);
  if (u > p.threshold) {
    return {p.reset == ResetMode::kToZero ? 0.0 : u - p.threshold, true};
  }
  return {u, false};
}

std::vector<std::uint8_t> lif_run(std::span<const double> currents,
                                  const LifParams& p) {
  std::vector<std::uint8_t> spikes;
  spikes.reserve(currents.size());
  double u = 0.0;
  for (double i : currents) {
    const auto step = lif_step(u, i, p);
    u = step.potential;
    spikes.push_back(step.spike ? 1 : 0);
  }
  return spikes;
}

SpikeMap threshold_activate(const AccumulatorMap& acc, std::int32_t threshold) {
  std::vector<std::uint8_t> out(acc.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = acc.values[i] > threshold ? 1 : 0;
  }
  return SpikeMap(acc.shape, std::move(out));
}

}  // namespace snnaccel
