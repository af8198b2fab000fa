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

#include "snnaccel/batchnorm.hpp"

#include <cmath>

#include "snnaccel/errors.hpp"

namespace snnaccel {

void BnParams::validate() const {
  if (!(variance >= 0.0)) throw InvalidParams("BN variance must be >= 0");
  if (!(eps > 0.0)) throw InvalidParams("BN eps must be > 0");
}

double bn_forward(double y, const BnParams& p) {
  return p.gamma * (y - p.mean) / std::sqrt(p.variance + p.eps) + p.beta;
}

RealTensor bn_forward(const RealTensor& y, const BnParams& p) {
  p.validate();
  RealTensor out = y;
  for (double& v : out.values()) v = bn_forward(v, p);
  return out;
}

FusedChannel fuse_bn(std::span<const double> weights, double bias,
                     const BnParams& p) {
  p.validate();
  const double k = p.gamma / std::sqrt(p.variance + p.eps);
  FusedChannel out;
  out.weights.reserve(weights.size());
  for (double w : weights) out.weights.push_back(k * w);
  out.bias = k * (bias - p.mean) + p.beta;
  return out;
}

}  // namespace snnaccel
