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

#include "snnaccel/io/real_model_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "snnaccel/errors.hpp"

namespace snnaccel::io {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "snnaccel-real-model";
constexpr int kVersion = 1;

json shape_json(const Shape3& s) { return json::array({s.channels, s.height, s.width}); }

Shape3 shape_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw CorruptFile("shape must be [c, h, w]");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>(), j[2].get<std::size_t>()};
}

}  // namespace

std::string real_network_to_json(const RealNetwork& net) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["input"] = {{"shape", shape_json(net.input_shape)}, {"max", net.input_max}};
  j["layers"] = json::array();
  for (const auto& l : net.layers) {
    json bn = json::array();
    for (const auto& p : l.bn) {
      bn.push_back({{"gamma", p.gamma}, {"beta", p.beta}, {"mean", p.mean},
                    {"variance", p.variance}, {"eps", p.eps}});
    }
    const auto& g = l.geometry;
    j["layers"].push_back({{"name", l.name},
                           {"role", to_string(l.role)},
                           {"input", shape_json(l.input_shape)},
                           {"in", g.in_channels},
                           {"out", g.out_channels},
                           {"kernel", g.kernel},
                           {"stride", g.stride},
                           {"padding", g.padding},
                           {"groups", g.groups},
                           {"threshold", l.threshold},
                           {"weights", l.weights},
                           {"bias", l.bias},
                           {"bn", bn}});
  }
  j["blocks"] = json::array();
  for (const auto& b : net.blocks) {
    j["blocks"].push_back({{"a", b.conv_a},
                           {"b", b.conv_b},
                           {"shortcut", b.shortcut ? json(*b.shortcut) : json(nullptr)}});
  }
  if (net.fc) {
    j["fc"] = {{"in", net.fc->in_features},
               {"out", net.fc->out_features},
               {"weights", net.fc->weights},
               {"bias", net.fc->bias}};
  } else {
    j["fc"] = nullptr;
  }
  return j.dump(1) + "\n";
}

RealNetwork real_network_from_json(const std::string& text) {
  RealNetwork net;
  try {
    const json j = json::parse(text);
    if (j.at("format") != kFormat) throw CorruptFile("not a real-valued model document");
    if (j.at("version") != kVersion) throw CorruptFile("unknown real-model version");
    net.input_shape = shape_from(j.at("input").at("shape"));
    net.input_max = j.at("input").at("max").get<double>();
    for (const auto& lj : j.at("layers")) {
      RealConvLayer l;
      l.name = lj.at("name").get<std::string>();
      l.role = layer_role_from_string(lj.at("role").get<std::string>());
      l.input_shape = shape_from(lj.at("input"));
      auto& g = l.geometry;
      g.in_channels = lj.at("in").get<std::size_t>();
      g.out_channels = lj.at("out").get<std::size_t>();
      g.kernel = lj.at("kernel").get<std::size_t>();
      g.stride = lj.at("stride").get<std::size_t>();
      g.padding = lj.at("padding").get<std::size_t>();
      g.groups = lj.at("groups").get<std::size_t>();
      l.threshold = lj.at("threshold").get<double>();
      l.weights = lj.at("weights").get<std::vector<double>>();
      l.bias = lj.at("bias").get<std::vector<double>>();
      for (const auto& pj : lj.at("bn")) {
        l.bn.push_back({pj.at("gamma").get<double>(), pj.at("beta").get<double>(),
                        pj.at("mean").get<double>(), pj.at("variance").get<double>(),
                        pj.at("eps").get<double>()});
      }
      net.layers.push_back(std::move(l));
    }
    for (const auto& bj : j.at("blocks")) {
      ResidualBlock b;
      b.conv_a = bj.at("a").get<std::size_t>();
      b.conv_b = bj.at("b").get<std::size_t>();
      if (!bj.at("shortcut").is_null()) b.shortcut = bj.at("shortcut").get<std::size_t>();
      net.blocks.push_back(b);
    }
    if (!j.at("fc").is_null()) {
      const auto& fj = j.at("fc");
      RealFcLayer fc;
      fc.in_features = fj.at("in").get<std::size_t>();
      fc.out_features = fj.at("out").get<std::size_t>();
      fc.weights = fj.at("weights").get<std::vector<double>>();
      fc.bias = fj.at("bias").get<std::vector<double>>();
      net.fc = std::move(fc);
    }
  } catch (const json::exception& e) {
    throw CorruptFile(std::string("real-model JSON: ") + e.what());
  } catch (const CorruptFile&) {
    throw;
  } catch (const Error& e) {
    throw CorruptFile(std::string("real-model JSON: ") + e.what());
  }
  try {
    net.validate();
  } catch (const Error& e) {
    throw CorruptFile(std::string("real-model JSON: ") + e.what());
  }
  return net;
}

void write_real_network(const std::string& path, const RealNetwork& net) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidConfig("cannot write '" + path + "'");
  out << real_network_to_json(net);
  if (!out) throw InvalidConfig("write to '" + path + "' failed");
}

RealNetwork read_real_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorruptFile("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return real_network_from_json(ss.str());
}

}  // namespace snnaccel::io
