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

#include "snnaccel/network.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "snnaccel/errors.hpp"

namespace snnaccel {

namespace {

std::string shape_str(const Shape3& s) {
  return std::to_string(s.channels) + "x" + std::to_string(s.height) + "x" +
         std::to_string(s.width);
}

std::int64_t max_abs_code(std::span<const std::int32_t> v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max<std::int64_t>(m, std::llabs(x));
  return m;
}

IntTensor zero_weights(const ConvGeometry& g, int bits) {
  std::vector<std::size_t> shape{g.out_channels, g.in_per_group(), g.kernel,
                                 g.kernel};
  return IntTensor(shape, std::vector<std::int32_t>(g.weight_count(), 0),
                   QuantParams(bits, bits - 1));
}

ConvLayerSpec make_layer(std::string name, LayerRole role, ConvGeometry geom,
                         Shape3 input, int bits, int input_exponent) {
  geom.validate();
  ConvLayerSpec l;
  l.name = std::move(name);
  l.role = role;
  l.geometry = geom;
  l.input_shape = input;
  l.weights = zero_weights(geom, bits);
  l.bias.assign(geom.out_channels, 0);
  l.input_exponent = input_exponent;
  return l;
}

}  // namespace

std::size_t conv_param_count(std::size_t in_channels, std::size_t out_channels,
                             std::size_t groups, std::size_t kernel) {
  if (groups == 0 || in_channels % groups != 0 || out_channels % groups != 0) {
    throw IndivisibleGroups("groups=" + std::to_string(groups) +
                            " does not divide C_in=" + std::to_string(in_channels) +
                            " and C_out=" + std::to_string(out_channels));
  }
  return (in_channels / groups) * (out_channels / groups) * groups * kernel *
         kernel;
}

void ConvGeometry::validate() const {
  if (in_channels == 0 || out_channels == 0 || kernel == 0 || stride == 0) {
    throw InvalidConfig("convolution extents must be positive");
  }
  conv_param_count(in_channels, out_channels, groups, kernel);
}

Shape3 ConvGeometry::output_shape(const Shape3& input) const {
  if (input.channels != in_channels) {
    throw ShapeMismatch("input has " + std::to_string(input.channels) +
                        " channels, layer expects " + std::to_string(in_channels));
  }
  const auto ph = input.height + 2 * padding;
  const auto pw = input.width + 2 * padding;
  if (ph < kernel || pw < kernel) {
    throw ShapeMismatch("input " + shape_str(input) + " smaller than kernel");
  }
  return {out_channels, (ph - kernel) / stride + 1, (pw - kernel) / stride + 1};
}

const char* to_string(LayerRole role) {
  switch (role) {
    case LayerRole::kEncode: return "encode";
    case LayerRole::kMain: return "main";
    case LayerRole::kShortcut: return "shortcut";
  }
  return "?";
}

LayerRole layer_role_from_string(const std::string& s) {
  if (s == "encode") return LayerRole::kEncode;
  if (s == "main") return LayerRole::kMain;
  if (s == "shortcut") return LayerRole::kShortcut;
  throw InvalidConfig("unknown layer role '" + s + "'");
}

void ConvLayerSpec::validate() const {
  geometry.validate();
  const std::vector<std::size_t> expected{geometry.out_channels,
                                          geometry.in_per_group(),
                                          geometry.kernel, geometry.kernel};
  if (weights.shape() != expected) {
    throw ShapeMismatch(name + ": weight tensor extents do not match geometry");
  }
  if (bias.size() != geometry.out_channels) {
    throw ShapeMismatch(name + ": bias count does not match output channels");
  }
  if (role != LayerRole::kEncode && input_exponent != 0) {
    throw ScaleMismatch(name + ": spike inputs carry exponent 0");
  }
  (void)output_shape();
}

void FcLayerSpec::validate() const {
  const std::vector<std::size_t> expected{out_features, in_features};
  if (weights.shape() != expected) {
    throw ShapeMismatch("fc weight tensor extents do not match");
  }
  if (bias.size() != out_features) {
    throw ShapeMismatch("fc bias count does not match output features");
  }
  if (pool_area <= 0) throw InvalidConfig("fc pool area must be positive");
}

std::size_t NetworkGraph::trainable_weight_layers() const {
  const auto convs = std::count_if(layers.begin(), layers.end(), [](const auto& l) {
    return l.role != LayerRole::kShortcut;
  });
  return static_cast<std::size_t>(convs) + (fc ? 1 : 0);
}

std::optional<std::size_t> block_closed_by(const NetworkGraph& g,
                                           std::size_t layer) {
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    if (g.blocks[b].conv_b == layer) return b;
  }
  return std::nullopt;
}

std::int64_t accumulator_bound(const NetworkGraph& g, std::size_t layer) {
  const auto& l = g.layers.at(layer);
  const std::int64_t max_x =
      l.is_encoding() ? std::int64_t{1} << (g.input_params.bits() - 1) : 1;
  std::int64_t bound = max_abs_code(l.weights.values()) *
                           static_cast<std::int64_t>(l.geometry.in_per_group() *
                                                     l.geometry.taps()) *
                           max_x +
                       max_abs_code(l.bias);
  if (auto b = block_closed_by(g, layer)) {
    const auto& blk = g.blocks[*b];
    if (blk.shortcut) {
      bound += accumulator_bound(g, *blk.shortcut);
    } else if (l.acc_exponent() >= 0 && l.acc_exponent() < 62) {
      bound += std::int64_t{1} << l.acc_exponent();
    } else {
      bound = std::numeric_limits<std::int64_t>::max();
    }
  }
  return bound;
}

void NetworkGraph::validate() const {
  constexpr std::int64_t kAccLimit = std::int64_t{1} << 31;
  if (layers.empty()) {
    if (!blocks.empty() || fc) throw InvalidConfig("blocks without an encoding layer");
    return;
  }
  std::vector<int> uses(layers.size(), 0);
  for (const auto& l : layers) l.validate();
  const auto& stem = layers.front();
  if (stem.role != LayerRole::kEncode) {
    throw InvalidConfig("layer 0 must be the encoding layer");
  }
  if (stem.input_shape != input_shape) {
    throw ShapeMismatch("encoding layer input " + shape_str(stem.input_shape) +
                        " differs from network input " + shape_str(input_shape));
  }
  if (stem.input_exponent != input_params.exponent()) {
    throw ScaleMismatch("encoding layer input exponent differs from input params");
  }
  uses[0] = 1;
  Shape3 current = stem.output_shape();
  for (const auto& blk : blocks) {
    for (auto idx : {blk.conv_a, blk.conv_b}) {
      if (idx >= layers.size()) throw InvalidConfig("block refers to a missing layer");
      if (layers[idx].role != LayerRole::kMain) {
        throw InvalidConfig(layers[idx].name + " is not a main-path layer");
      }
      ++uses[idx];
    }
    const auto& a = layers[blk.conv_a];
    const auto& b = layers[blk.conv_b];
    if (a.input_shape != current) throw ShapeMismatch(a.name + ": input shape");
    if (b.input_shape != a.output_shape()) throw ShapeMismatch(b.name + ": input shape");
    const Shape3 main_out = b.output_shape();
    if (blk.shortcut) {
      if (*blk.shortcut >= layers.size()) throw InvalidConfig("missing shortcut layer");
      const auto& sc = layers[*blk.shortcut];
      if (sc.role != LayerRole::kShortcut) {
        throw InvalidConfig(sc.name + " is not a shortcut layer");
      }
      ++uses[*blk.shortcut];
      if (sc.input_shape != current) throw ShapeMismatch(sc.name + ": input shape");
      if (sc.output_shape() != main_out) {
        throw ShapeMismatch("residual add of " + shape_str(main_out) + " and " +
                            shape_str(sc.output_shape()));
      }
      if (sc.acc_exponent() != b.acc_exponent()) {
        throw ScaleMismatch(b.name + " and " + sc.name +
                            " accumulate at different scales");
      }
    } else {
      if (current != main_out) {
        throw ShapeMismatch("identity residual add of " + shape_str(main_out) +
                            " and " + shape_str(current));
      }
      if (b.acc_exponent() < 0) {
        throw ScaleMismatch(b.name + ": identity shortcut needs a non-negative "
                                     "accumulator exponent");
      }
    }
    current = main_out;
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (uses[i] != 1) {
      throw InvalidConfig(layers[i].name + " is not used exactly once");
    }
    const auto bound = accumulator_bound(*this, i);
    if (bound >= kAccLimit) {
      throw InvalidConfig(layers[i].name + ": accumulator bound " +
                          std::to_string(bound) + " exceeds int32");
    }
  }
  if (fc) {
    fc->validate();
    if (fc->in_features != current.channels) {
      throw ShapeMismatch("fc expects " + std::to_string(fc->in_features) +
                          " features, pool yields " + std::to_string(current.channels));
    }
    if (fc->pool_area != static_cast<std::int64_t>(current.plane())) {
      throw ShapeMismatch("fc pool area does not match the final map");
    }
    const std::int64_t bound = max_abs_code(fc->weights.values()) *
                                   static_cast<std::int64_t>(fc->in_features) *
                                   fc->pool_area +
                               max_abs_code(fc->bias);
    if (bound >= kAccLimit) throw InvalidConfig("fc accumulator bound exceeds int32");
  }
}

void NetworkConfig::validate() const {
  if (input_channels == 0 || input_size == 0 || stem_channels == 0 ||
      num_classes == 0 || blocks_per_stage == 0 || stage_channels.empty() ||
      groups == 0) {
    throw InvalidConfig("network extents must be positive");
  }
  if (bits < kMinBits || bits > kMaxBits) throw InvalidConfig("bit width outside [2, 16]");
  for (auto c : stage_channels) {
    if (c == 0 || c % groups != 0) {
      throw IndivisibleGroups("stage width " + std::to_string(c) +
                              " not divisible by groups=" + std::to_string(groups));
    }
  }
}

NetworkGraph build_resnet10(const NetworkConfig& cfg) {
  cfg.validate();
  NetworkGraph g;
  g.input_shape = {cfg.input_channels, cfg.input_size, cfg.input_size};
  g.input_params = QuantParams(cfg.bits, cfg.input_exponent);
  g.layers.push_back(make_layer("conv1", LayerRole::kEncode,
                                {cfg.input_channels, cfg.stem_channels, 3, 1, 1, 1},
                                g.input_shape, cfg.bits, cfg.input_exponent));
  Shape3 current = g.layers.back().output_shape();
  for (std::size_t s = 0; s < cfg.stage_channels.size(); ++s) {
    const auto width = cfg.stage_channels[s];
    for (std::size_t b = 0; b < cfg.blocks_per_stage; ++b) {
      const std::string prefix =
          "conv" + std::to_string(s + 2) + "_" + std::to_string(b + 1);
      const std::size_t stride = (s > 0 && b == 0) ? 2 : 1;
      ResidualBlock blk;
      blk.conv_a = g.layers.size();
      g.layers.push_back(make_layer(prefix + "a", LayerRole::kMain,
                                    {current.channels, width, 3, stride, 1, cfg.groups},
                                    current, cfg.bits, 0));
      const Shape3 mid = g.layers.back().output_shape();
      if (stride != 1 || current.channels != width) {
        blk.shortcut = g.layers.size();
        g.layers.push_back(make_layer(prefix + "sc", LayerRole::kShortcut,
                                      {current.channels, width, 1, stride, 0, 1},
                                      current, cfg.bits, 0));
      }
      blk.conv_b = g.layers.size();
      g.layers.push_back(make_layer(prefix + "b", LayerRole::kMain,
                                    {width, width, 3, 1, 1, cfg.groups}, mid,
                                    cfg.bits, 0));
      current = g.layers.back().output_shape();
      g.blocks.push_back(blk);
    }
  }
  FcLayerSpec fc;
  fc.in_features = current.channels;
  fc.out_features = cfg.num_classes;
  fc.weights = IntTensor({fc.out_features, fc.in_features},
                         std::vector<std::int32_t>(fc.out_features * fc.in_features, 0),
                         QuantParams(cfg.bits, cfg.bits - 1));
  fc.bias.assign(fc.out_features, 0);
  fc.pool_area = static_cast<std::int64_t>(current.plane());
  g.fc = std::move(fc);
  g.validate();
  return g;
}

std::size_t count_params(const NetworkGraph& g, ParamCountOptions opts) {
  std::size_t total = 0;
  for (const auto& l : g.layers) {
    total += l.geometry.weight_count();
    if (opts.include_bias) total += l.geometry.out_channels;
  }
  if (g.fc) {
    total += g.fc->in_features * g.fc->out_features;
    if (opts.include_bias) total += g.fc->out_features;
  }
  return total;
}

std::vector<LayerParamCount> param_breakdown(const NetworkGraph& g) {
  std::vector<LayerParamCount> rows;
  for (const auto& l : g.layers) {
    const auto& geo = l.geometry;
    rows.push_back({l.name,
                    conv_param_count(geo.in_channels, geo.out_channels, 1, geo.kernel),
                    geo.weight_count()});
  }
  if (g.fc) {
    const auto n = g.fc->in_features * g.fc->out_features;
    rows.push_back({"fc", n, n});
  }
  return rows;
}

}  // namespace snnaccel
