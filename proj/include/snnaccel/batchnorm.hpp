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

#include <span>
#include <vector>

#include "snnaccel/tensor.hpp"

namespace snnaccel {

/// Inference-time batch-norm statistics for one channel.
struct BnParams {
  double gamma = 1.0;
  double beta = 0.0;
  double mean = 0.0;
  double variance = 1.0;
  double eps = 1e-5;

  void validate() const;
  bool operator==(const BnParams&) const = default;
};

double bn_forward(double y, const BnParams& p);
RealTensor bn_forward(const RealTensor& y, const BnParams& p);

struct FusedChannel {
  std::vector<double> weights;
  double bias = 0.0;
};

/// Folds a BN into the weights and bias feeding it:
///   c = gamma * w / sqrt(var + eps),  d = gamma * (b - mean) / sqrt(var + eps) + beta.
FusedChannel fuse_bn(std::span<const double> weights, double bias,
                     const BnParams& p);

}  // namespace snnaccel
