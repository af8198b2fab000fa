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

#include "snnaccel/model_prep.hpp"

#include <algorithm>
#include <cmath>

#include "snnaccel/errors.hpp"

namespace snnaccel {

double Rng::uniform(double lo, double hi) {
  const double u = std::ldexp(static_cast<double>(engine_() >> 11), -53);
  return lo + (hi - lo) * u;
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

bool RealNetwork::fused() const {
  return std::all_of(layers.begin(), layers.end(),
                     [](const RealConvLayer& l) { return l.bn.empty(); });
}

void RealNetwork::validate() const {
  if (!(input_max >= 0.0) || !std::isfinite(input_max)) {
    throw InvalidConfig("input_max must be finite and non-negative");
  }
  for (const auto& l : layers) {
    l.geometry.validate();
    if (l.weights.size() != l.geometry.weight_count()) {
      throw ShapeMismatch(l.name + ": weight count does not match geometry");
    }
    if (l.bias.size() != l.geometry.out_channels) {
      throw ShapeMismatch(l.name + ": bias count does not match output channels");
    }
    if (!l.bn.empty() && l.bn.size() != l.geometry.out_channels) {
      throw ShapeMismatch(l.name + ": BN channel count does not match");
    }
    for (const auto& p : l.bn) p.validate();
    (void)l.geometry.output_shape(l.input_shape);
  }
  if (fc) {
    if (fc->weights.size() != fc->in_features * fc->out_features ||
        fc->bias.size() != fc->out_features) {
      throw ShapeMismatch("fc parameter counts do not match its extents");
    }
  }
}

RealNetwork real_network_like(const NetworkGraph& topology) {
  RealNetwork net;
  net.input_shape = topology.input_shape;
  net.blocks = topology.blocks;
  for (const auto& l : topology.layers) {
    RealConvLayer r;
    r.name = l.name;
    r.role = l.role;
    r.geometry = l.geometry;
    r.input_shape = l.input_shape;
    r.weights.assign(l.geometry.weight_count(), 0.0);
    r.bias.assign(l.geometry.out_channels, 0.0);
    r.bn.assign(l.geometry.out_channels, BnParams{1.0, 0.0, 0.0, 1.0, 1e-5});
    net.layers.push_back(std::move(r));
  }
  if (topology.fc) {
    RealFcLayer fc;
    fc.in_features = topology.fc->in_features;
    fc.out_features = topology.fc->out_features;
    fc.weights.assign(fc.in_features * fc.out_features, 0.0);
    fc.bias.assign(fc.out_features, 0.0);
    net.fc = std::move(fc);
  }
  return net;
}

RealNetwork random_real_network(const NetworkConfig& cfg, std::uint64_t seed) {
  const NetworkGraph topology = build_resnet10(cfg);
  RealNetwork net = real_network_like(topology);
  Rng rng(seed);
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    auto& l = net.layers[i];
    const double fan_in =
        static_cast<double>(l.geometry.in_per_group() * l.geometry.taps());
    const double a = std::sqrt(3.0 / fan_in);
    for (double& w : l.weights) w = rng.uniform(-a, a);
    for (double& b : l.bias) b = rng.uniform(-0.1, 0.1);
    // Spike inputs of density ~0.3 give pre-BN variance ~0.3; pixel inputs
    // have a mean of ~0.5, which the BN mean absorbs.
    for (std::size_t o = 0; o < l.bn.size(); ++o) {
      auto& bn = l.bn[o];
      bn.gamma = rng.uniform(0.8, 1.2);
      bn.beta = rng.uniform(-0.3, 0.3);
      if (l.role == LayerRole::kEncode) {
        double sum = 0.0;
        const auto per = l.geometry.in_per_group() * l.geometry.taps();
        for (std::size_t j = 0; j < per; ++j) sum += l.weights[o * per + j];
        bn.mean = 0.5 * sum + l.bias[o];
        bn.variance = rng.uniform(0.05, 0.15);
      } else {
        bn.mean = l.bias[o] + rng.uniform(-0.05, 0.05);
        bn.variance = rng.uniform(0.2, 0.4);
      }
      bn.eps = 1e-5;
    }
    l.threshold = block_closed_by(topology, i) ? 1.0 : 0.5;
  }
  if (net.fc) {
    const double a = std::sqrt(3.0 / static_cast<double>(net.fc->in_features));
    for (double& w : net.fc->weights) w = rng.uniform(-a, a);
    for (double& b : net.fc->bias) b = rng.uniform(-0.1, 0.1);
  }
  return net;
}

RealNetwork fuse_network(const RealNetwork& net) {
  net.validate();
  RealNetwork out = net;
  for (auto& l : out.layers) {
    if (l.bn.empty()) continue;
    const auto per = l.geometry.in_per_group() * l.geometry.taps();
    for (std::size_t o = 0; o < l.geometry.out_channels; ++o) {
      const std::span<const double> w(l.weights.data() + o * per, per);
      auto fused = fuse_bn(w, l.bias[o], l.bn[o]);
      std::copy(fused.weights.begin(), fused.weights.end(),
                l.weights.begin() + static_cast<std::ptrdiff_t>(o * per));
      l.bias[o] = fused.bias;
    }
    l.bn.clear();
  }
  return out;
}

namespace {

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

NetworkGraph quantize_network(const RealNetwork& fused, int bits) {
  fused.validate();
  if (!fused.fused()) throw InvalidConfig("quantize expects a BN-fused network");
  NetworkGraph g;
  g.input_shape = fused.input_shape;
  g.input_params = compute_scale_or_default(fused.input_max, kInputBits);
  g.blocks = fused.blocks;

  std::vector<int> weight_exp(fused.layers.size());
  for (std::size_t i = 0; i < fused.layers.size(); ++i) {
    weight_exp[i] =
        compute_scale_or_default(max_abs_of(fused.layers[i].weights), bits).exponent();
  }
  for (const auto& blk : fused.blocks) {
    if (!blk.shortcut) continue;
    const int shared = std::min(weight_exp.at(blk.conv_b), weight_exp.at(*blk.shortcut));
    weight_exp[blk.conv_b] = shared;
    weight_exp[*blk.shortcut] = shared;
  }

  for (std::size_t i = 0; i < fused.layers.size(); ++i) {
    const auto& r = fused.layers[i];
    ConvLayerSpec l;
    l.name = r.name;
    l.role = r.role;
    l.geometry = r.geometry;
    l.input_shape = r.input_shape;
    const QuantParams wp(bits, weight_exp[i]);
    l.weights = quantize(RealTensor({r.geometry.out_channels, r.geometry.in_per_group(),
                                     r.geometry.kernel, r.geometry.kernel},
                                    r.weights),
                         wp);
    l.input_exponent = r.role == LayerRole::kEncode ? g.input_params.exponent() : 0;
    const int acc = l.acc_exponent();
    l.bias.reserve(r.bias.size());
    for (double d : r.bias) l.bias.push_back(to_accumulator_scale(d, acc));
    l.threshold = to_accumulator_scale(r.threshold, acc);
    g.layers.push_back(std::move(l));
  }

  if (fused.fc) {
    const auto& r = *fused.fc;
    if (g.layers.empty()) throw InvalidConfig("fc layer without convolutions");
    FcLayerSpec fc;
    fc.in_features = r.in_features;
    fc.out_features = r.out_features;
    const QuantParams wp = compute_scale_or_default(max_abs_of(r.weights), bits);
    fc.weights = quantize(RealTensor({r.out_features, r.in_features}, r.weights), wp);
    const Shape3 last = g.blocks.empty() ? g.layers.front().output_shape()
                                         : g.layers[g.blocks.back().conv_b].output_shape();
    fc.pool_area = static_cast<std::int64_t>(last.plane());
    for (double b : r.bias) {
      fc.bias.push_back(
          to_accumulator_scale(b * static_cast<double>(fc.pool_area), wp.exponent()));
    }
    g.fc = std::move(fc);
  }
  g.validate();
  return g;
}

NetworkGraph make_random_model(const NetworkConfig& cfg, std::uint64_t seed) {
  return quantize_network(fuse_network(random_real_network(cfg, seed)), cfg.bits);
}

std::vector<Image> random_images(std::size_t count, std::uint64_t seed, Shape3 shape) {
  Rng rng(seed);
  std::vector<Image> out(count);
  for (auto& img : out) {
    img.shape = shape;
    img.pixels.resize(shape.size());
    for (std::size_t c = 0; c < shape.channels; ++c) {
      const double base = rng.uniform(0.0, 255.0);
      const double spread = rng.uniform(0.0, 255.0);
      for (std::size_t i = 0; i < shape.plane(); ++i) {
        const double v = base + spread * (rng.uniform(0.0, 1.0) - 0.5);
        img.pixels[c * shape.plane() + i] =
            static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return out;
}

}  // namespace snnaccel
