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

#include "snnaccel/io/model_file.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "snnaccel/errors.hpp"

namespace snnaccel::io {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[at + i]} << (8 * i);
  return v;
}

std::size_t element_bytes(const QuantParams& p) { return p.bits() <= 8 ? 1 : 2; }

void put_values(std::vector<std::uint8_t>& out, std::span<const std::int32_t> v,
                std::size_t bytes) {
  for (auto x : v) {
    const auto u = static_cast<std::uint32_t>(x);
    for (std::size_t i = 0; i < bytes; ++i) {
      out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
    }
  }
}

void check_name(const std::string& name) {
  if (name.empty() || name.find_first_of(" \t\n=") != std::string::npos) {
    throw InvalidConfig("layer name '" + name + "' cannot be stored in a manifest");
  }
}

using Fields = std::map<std::string, std::string>;

struct Line {
  std::string kind;
  Fields fields;
};

std::vector<Line> parse_manifest(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    if (raw.empty()) continue;
    std::istringstream ls(raw);
    Line line;
    ls >> line.kind;
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw CorruptFile("malformed manifest token '" + tok + "'");
      }
      if (!line.fields.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) {
        throw CorruptFile("duplicate manifest key '" + tok.substr(0, eq) + "'");
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

const std::string& field(const Line& l, const std::string& key) {
  auto it = l.fields.find(key);
  if (it == l.fields.end()) {
    throw CorruptFile("manifest line '" + l.kind + "' lacks key '" + key + "'");
  }
  return it->second;
}

template <typename T>
T number(const Line& l, const std::string& key) {
  const auto& s = field(l, key);
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw CorruptFile("bad value '" + s + "' for key '" + key + "'");
  }
  return v;
}

void expect_keys(const Line& l, std::size_t n) {
  if (l.fields.size() != n) {
    throw CorruptFile("manifest line '" + l.kind + "' has unexpected keys");
  }
}

Shape3 parse_shape(const std::string& s) {
  Shape3 shape;
  std::size_t* parts[3] = {&shape.channels, &shape.height, &shape.width};
  const char* p = s.data();
  const char* end = s.data() + s.size();
  for (int i = 0; i < 3; ++i) {
    auto [q, ec] = std::from_chars(p, end, *parts[i]);
    if (ec != std::errc()) throw CorruptFile("bad shape '" + s + "'");
    p = q;
    if (i < 2) {
      if (p == end || *p != 'x') throw CorruptFile("bad shape '" + s + "'");
      ++p;
    }
  }
  if (p != end) throw CorruptFile("bad shape '" + s + "'");
  return shape;
}

std::string shape_str(const Shape3& s) {
  return std::to_string(s.channels) + "x" + std::to_string(s.height) + "x" +
         std::to_string(s.width);
}

class BlobReader {
 public:
  BlobReader(std::span<const std::uint8_t> b, std::size_t at) : b_(b), at_(at) {}

  std::vector<std::int32_t> values(std::size_t n, std::size_t bytes) {
    if (n > (b_.size() - at_) / bytes) throw CorruptFile("blob section is truncated");
    std::vector<std::int32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t u = 0;
      for (std::size_t j = 0; j < bytes; ++j) u |= std::uint32_t{b_[at_++]} << (8 * j);
      const int shift = 32 - static_cast<int>(8 * bytes);
      v[i] = shift == 0 ? static_cast<std::int32_t>(u)
                        : static_cast<std::int32_t>(u << shift) >> shift;
    }
    return v;
  }
  bool done() const { return at_ == b_.size(); }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t at_;
};

IntTensor make_tensor(std::vector<std::size_t> shape, std::vector<std::int32_t> v,
                      QuantParams p) {
  try {
    return IntTensor(std::move(shape), std::move(v), p);
  } catch (const Error& e) {
    throw CorruptFile(std::string("weight blob: ") + e.what());
  }
}

QuantParams make_params(int bits, int exponent) {
  try {
    return QuantParams(bits, exponent);
  } catch (const Error& e) {
    throw CorruptFile(e.what());
  }
}

}  // namespace

std::string model_manifest(const NetworkGraph& m) {
  std::ostringstream os;
  os << "snnaccel-model version=" << kModelVersion << '\n';
  os << "input shape=" << shape_str(m.input_shape) << " bits=" << m.input_params.bits()
     << " exponent=" << m.input_params.exponent() << '\n';
  for (const auto& l : m.layers) {
    check_name(l.name);
    const auto& g = l.geometry;
    os << "layer name=" << l.name << " role=" << to_string(l.role)
       << " input=" << shape_str(l.input_shape) << " in=" << g.in_channels
       << " out=" << g.out_channels << " kernel=" << g.kernel << " stride=" << g.stride
       << " padding=" << g.padding << " groups=" << g.groups
       << " weight_bits=" << l.weights.params().bits()
       << " weight_exponent=" << l.weights.params().exponent()
       << " input_exponent=" << l.input_exponent << " threshold=" << l.threshold << '\n';
  }
  for (const auto& b : m.blocks) {
    os << "block a=" << b.conv_a << " b=" << b.conv_b << " shortcut=";
    if (b.shortcut) {
      os << *b.shortcut;
    } else {
      os << "none";
    }
    os << '\n';
  }
  if (m.fc) {
    os << "fc in=" << m.fc->in_features << " out=" << m.fc->out_features
       << " weight_bits=" << m.fc->weights.params().bits()
       << " weight_exponent=" << m.fc->weights.params().exponent()
       << " pool_area=" << m.fc->pool_area << '\n';
  }
  return os.str();
}

std::vector<std::uint8_t> save_model(const NetworkGraph& m) {
  const std::string manifest = model_manifest(m);
  std::vector<std::uint8_t> out(kModelMagic, kModelMagic + 4);
  put_u32(out, kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(manifest.size()));
  out.insert(out.end(), manifest.begin(), manifest.end());
  for (const auto& l : m.layers) {
    put_values(out, l.weights.values(), element_bytes(l.weights.params()));
    put_values(out, l.bias, 4);
  }
  if (m.fc) {
    put_values(out, m.fc->weights.values(), element_bytes(m.fc->weights.params()));
    put_values(out, m.fc->bias, 4);
  }
  return out;
}

NetworkGraph load_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw CorruptFile("file shorter than its header");
  if (std::memcmp(bytes.data(), kModelMagic, 4) != 0) throw CorruptFile("bad magic");
  const auto version = get_u32(bytes, 4);
  if (version != kModelVersion) {
    throw CorruptFile("unknown version " + std::to_string(version));
  }
  const std::size_t manifest_len = get_u32(bytes, 8);
  if (bytes.size() - 12 < manifest_len) throw CorruptFile("manifest is truncated");
  const std::string text(bytes.begin() + 12, bytes.begin() + 12 + manifest_len);
  const auto lines = parse_manifest(text);

  if (lines.empty() || lines[0].kind != "snnaccel-model" ||
      number<std::uint32_t>(lines[0], "version") != kModelVersion) {
    throw CorruptFile("manifest does not start with a model header");
  }
  NetworkGraph m;
  BlobReader blobs(bytes, 12 + manifest_len);
  bool seen_input = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.kind == "input") {
      expect_keys(l, 3);
      if (seen_input) throw CorruptFile("duplicate input line");
      seen_input = true;
      m.input_shape = parse_shape(field(l, "shape"));
      m.input_params = make_params(number<int>(l, "bits"), number<int>(l, "exponent"));
    } else if (l.kind == "layer") {
      expect_keys(l, 13);
      if (m.fc || !m.blocks.empty()) throw CorruptFile("layer line out of order");
      ConvLayerSpec s;
      s.name = field(l, "name");
      try {
        s.role = layer_role_from_string(field(l, "role"));
      } catch (const Error& e) {
        throw CorruptFile(e.what());
      }
      s.input_shape = parse_shape(field(l, "input"));
      auto& g = s.geometry;
      g.in_channels = number<std::size_t>(l, "in");
      g.out_channels = number<std::size_t>(l, "out");
      g.kernel = number<std::size_t>(l, "kernel");
      g.stride = number<std::size_t>(l, "stride");
      g.padding = number<std::size_t>(l, "padding");
      g.groups = number<std::size_t>(l, "groups");
      std::size_t count = 0;
      try {
        g.validate();
        count = g.weight_count();
      } catch (const Error& e) {
        throw CorruptFile(s.name + ": " + e.what());
      }
      const auto p = make_params(number<int>(l, "weight_bits"),
                                 number<int>(l, "weight_exponent"));
      s.input_exponent = number<int>(l, "input_exponent");
      s.threshold = number<std::int32_t>(l, "threshold");
      s.weights = make_tensor({g.out_channels, g.in_per_group(), g.kernel, g.kernel},
                              blobs.values(count, element_bytes(p)), p);
      s.bias = blobs.values(g.out_channels, 4);
      m.layers.push_back(std::move(s));
    } else if (l.kind == "block") {
      expect_keys(l, 3);
      if (m.fc) throw CorruptFile("block line out of order");
      ResidualBlock b;
      b.conv_a = number<std::size_t>(l, "a");
      b.conv_b = number<std::size_t>(l, "b");
      if (field(l, "shortcut") != "none") b.shortcut = number<std::size_t>(l, "shortcut");
      m.blocks.push_back(b);
    } else if (l.kind == "fc") {
      expect_keys(l, 5);
      if (m.fc) throw CorruptFile("duplicate fc line");
      FcLayerSpec fc;
      fc.in_features = number<std::size_t>(l, "in");
      fc.out_features = number<std::size_t>(l, "out");
      fc.pool_area = number<std::int64_t>(l, "pool_area");
      const auto p = make_params(number<int>(l, "weight_bits"),
                                 number<int>(l, "weight_exponent"));
      if (fc.in_features == 0 || fc.out_features == 0 ||
          fc.in_features > (std::size_t{1} << 24) || fc.out_features > (std::size_t{1} << 24)) {
        throw CorruptFile("fc extents out of range");
      }
      fc.weights = make_tensor({fc.out_features, fc.in_features},
                               blobs.values(fc.in_features * fc.out_features,
                                            element_bytes(p)),
                               p);
      fc.bias = blobs.values(fc.out_features, 4);
      m.fc = std::move(fc);
    } else {
      throw CorruptFile("unknown manifest line '" + l.kind + "'");
    }
  }
  if (!seen_input) throw CorruptFile("manifest lacks an input line");
  if (!blobs.done()) throw CorruptFile("trailing bytes after the last blob");
  try {
    m.validate();
  } catch (const CorruptFile&) {
    throw;
  } catch (const Error& e) {
    throw CorruptFile(std::string("model fails validation: ") + e.what());
  }
  return m;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptFile("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidConfig("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InvalidConfig("write to '" + path + "' failed");
}

void write_model_file(const std::string& path, const NetworkGraph& model) {
  write_file_bytes(path, save_model(model));
}

NetworkGraph read_model_file(const std::string& path) {
  return load_model(read_file_bytes(path));
}

}  // namespace snnaccel::io
