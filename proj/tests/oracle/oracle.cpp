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

#include "oracle/oracle.hpp"

#include <cmath>
#include <cstdlib>

namespace oracle {

std::vector<std::int64_t> conv_naive(const std::vector<std::int64_t>& x, const Shape3& in,
                                     const std::vector<std::int32_t>& w,
                                     const std::vector<std::int32_t>& bias,
                                     const ConvGeometry& g) {
  const long k = static_cast<long>(g.kernel);
  const long s = static_cast<long>(g.stride);
  const long p = static_cast<long>(g.padding);
  const long H = static_cast<long>(in.height);
  const long W = static_cast<long>(in.width);
  const long OH = (H + 2 * p - k) / s + 1;
  const long OW = (W + 2 * p - k) / s + 1;
  const long ipg = static_cast<long>(g.in_channels / g.groups);
  const long opg = static_cast<long>(g.out_channels / g.groups);
  std::vector<std::int64_t> out(g.out_channels * OH * OW, 0);
  for (long o = 0; o < static_cast<long>(g.out_channels); ++o) {
    const long grp = o / opg;
    for (long y = 0; y < OH; ++y) {
      for (long xx = 0; xx < OW; ++xx) {
        std::int64_t acc = bias.empty() ? 0 : bias[o];
        for (long i = 0; i < ipg; ++i) {
          const long c = grp * ipg + i;
          for (long ky = 0; ky < k; ++ky) {
            for (long kx = 0; kx < k; ++kx) {
              const long iy = y * s + ky - p;
              const long ix = xx * s + kx - p;
              if (iy < 0 || iy >= H || ix < 0 || ix >= W) continue;
              acc += static_cast<std::int64_t>(w[((o * ipg + i) * k + ky) * k + kx]) *
                     x[(c * H + iy) * W + ix];
            }
          }
        }
        out[(o * OH + y) * OW + xx] = acc;
      }
    }
  }
  return out;
}

std::vector<double> conv_real(const std::vector<double>& x, const Shape3& in,
                              const std::vector<double>& w, const std::vector<double>& bias,
                              const ConvGeometry& g) {
  const long k = static_cast<long>(g.kernel);
  const long s = static_cast<long>(g.stride);
  const long p = static_cast<long>(g.padding);
  const long H = static_cast<long>(in.height);
  const long W = static_cast<long>(in.width);
  const long OH = (H + 2 * p - k) / s + 1;
  const long OW = (W + 2 * p - k) / s + 1;
  const long ipg = static_cast<long>(g.in_channels / g.groups);
  const long opg = static_cast<long>(g.out_channels / g.groups);
  std::vector<double> out(g.out_channels * OH * OW, 0.0);
  for (long o = 0; o < static_cast<long>(g.out_channels); ++o) {
    for (long y = 0; y < OH; ++y) {
      for (long xx = 0; xx < OW; ++xx) {
        double acc = bias[o];
        for (long i = 0; i < ipg; ++i) {
          const long c = (o / opg) * ipg + i;
          for (long ky = 0; ky < k; ++ky) {
            for (long kx = 0; kx < k; ++kx) {
              const long iy = y * s + ky - p;
              const long ix = xx * s + kx - p;
              if (iy < 0 || iy >= H || ix < 0 || ix >= W) continue;
              acc += w[((o * ipg + i) * k + ky) * k + kx] * x[(c * H + iy) * W + ix];
            }
          }
        }
        out[(o * OH + y) * OW + xx] = acc;
      }
    }
  }
  return out;
}

int scale_exponent(double r_max, int bits) {
  const double limit = static_cast<double>(1L << (bits - 1));
  int n = 0;
  double v = r_max;
  while (v > limit) {
    v /= 2.0;
    --n;
  }
  while (v * 2.0 <= limit) {
    v *= 2.0;
    ++n;
  }
  return n;
}

std::int32_t quantize_ratio(std::int64_t num, std::int64_t den, int n, int bits) {
  // value = num * 2^n / den; round half away from zero on the exact rational.
  const bool neg = (num < 0) != (den < 0);
  __int128 a = std::llabs(num);
  __int128 d = std::llabs(den);
  if (n >= 0) {
    a <<= n;
  } else {
    d <<= -n;
  }
  __int128 q = (2 * a + d) / (2 * d);
  const __int128 hi = (static_cast<__int128>(1) << (bits - 1)) - 1;
  const __int128 lo = -(static_cast<__int128>(1) << (bits - 1));
  __int128 r = neg ? -q : q;
  if (r > hi) r = hi;
  if (r < lo) r = lo;
  return static_cast<std::int32_t>(r);
}

namespace {

std::vector<double> dequant(std::span<const std::int32_t> v, int exponent) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::ldexp(static_cast<double>(v[i]), -exponent);
  return out;
}

std::vector<double> conv_layer(const std::vector<double>& x,
                               const snnaccel::ConvLayerSpec& l) {
  const int acc = l.weights.params().exponent() + l.input_exponent;
  return conv_real(x, l.input_shape,
                   dequant(l.weights.values(), l.weights.params().exponent()),
                   dequant(l.bias, acc), l.geometry);
}

std::vector<std::uint8_t> fire(const std::vector<double>& u, const snnaccel::ConvLayerSpec& l) {
  const double thr = std::ldexp(static_cast<double>(l.threshold),
                                -(l.weights.params().exponent() + l.input_exponent));
  std::vector<std::uint8_t> s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] > thr ? 1 : 0;
  return s;
}

std::vector<double> as_real(const std::vector<std::uint8_t>& s) {
  return {s.begin(), s.end()};
}

}  // namespace

ForwardResult forward_dequantized(const snnaccel::NetworkGraph& model,
                                  const snnaccel::Image& image) {
  ForwardResult r;
  r.spikes.resize(model.layers.size());
  const int nin = model.input_params.exponent();
  std::vector<double> x(image.pixels.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::ldexp(
        static_cast<double>(quantize_ratio(image.pixels[i], 255, nin, model.input_params.bits())),
        -nin);
  }
  r.spikes[0] = fire(conv_layer(x, model.layers[0]), model.layers[0]);
  std::vector<std::uint8_t> cur = r.spikes[0];
  for (const auto& blk : model.blocks) {
    const auto& a = model.layers[blk.conv_a];
    const auto& b = model.layers[blk.conv_b];
    r.spikes[blk.conv_a] = fire(conv_layer(as_real(cur), a), a);
    auto u = conv_layer(as_real(r.spikes[blk.conv_a]), b);
    if (blk.shortcut) {
      const auto sc = conv_layer(as_real(cur), model.layers[*blk.shortcut]);
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += sc[i];
    } else {
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += cur[i];
    }
    r.spikes[blk.conv_b] = fire(u, b);
    cur = r.spikes[blk.conv_b];
  }
  const auto& fc = *model.fc;
  const std::size_t area = cur.size() / fc.in_features;
  std::vector<double> pooled(fc.in_features, 0.0);
  for (std::size_t c = 0; c < fc.in_features; ++c) {
    for (std::size_t i = 0; i < area; ++i) pooled[c] += cur[c * area + i];
    pooled[c] /= static_cast<double>(area);
  }
  const int nfc = fc.weights.params().exponent();
  r.scores.assign(fc.out_features, 0.0);
  for (std::size_t o = 0; o < fc.out_features; ++o) {
    double s = std::ldexp(static_cast<double>(fc.bias[o]), -nfc) / static_cast<double>(area);
    for (std::size_t i = 0; i < fc.in_features; ++i) {
      s += std::ldexp(static_cast<double>(fc.weights[o * fc.in_features + i]), -nfc) * pooled[i];
    }
    r.scores[o] = s;
  }
  for (std::size_t o = 1; o < r.scores.size(); ++o) {
    if (r.scores[o] > r.scores[r.label]) r.label = static_cast<int>(o);
  }
  return r;
}

}  // namespace oracle
