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

#include <cstdint>
#include <span>
#include <vector>

#include "snnaccel/tensor.hpp"

namespace snnaccel {

enum class ResetMode { kToZero, kSubtract };

/// Leaky integrate-and-fire neuron parameters. Requires tau > 0, dt > 0 and
/// dt <= tau (explicit Euler stability).
struct LifParams {
  double tau = 1.0;
  double resistance = 1.0;
  double threshold = 1.0;
  double dt = 1.0;
  ResetMode reset = ResetMode::kToZero;

  void validate() const;
};

struct LifStep {
  double potential = 0.0;
  bool spike = false;
};

/// One explicit-Euler step of tau dU/dt = -U + R I, firing when the updated
/// potential strictly exceeds the threshold.
LifStep lif_step(double potential, double current, const LifParams& p);

/// Multi-timestep reference: runs lif_step over a current sequence starting
/// from rest and returns the spike train.
std::vector<std::uint8_t> lif_run(std::span<const double> currents,
                                  const LifParams& p);

/// Single-timestep activation: spike iff acc > threshold. No state.
SpikeMap threshold_activate(const AccumulatorMap& acc, std::int32_t threshold);

}  // namespace snnaccel
