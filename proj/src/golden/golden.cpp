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

#include "snnaccel/golden.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "snnaccel/errors.hpp"
#include "snnaccel/neuron.hpp"

namespace snnaccel {

int argmax(std::span<const std::int64_t> scores) {
  if (scores.empty()) throw ShapeMismatch("argmax of an empty score vector");
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) -
                          scores.begin());
}

}  // namespace snnaccel

namespace snnaccel::golden {

namespace {

template <typename T>
std::vector<T> pad_planes(std::span<const T> in, const Shape3& s, std::size_t p) {
  const Shape3 out{s.channels, s.height + 2 * p, s.width + 2 * p};
  std::vector<T> v(out.size(), T{0});
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t y = 0; y < s.height; ++y) {
      std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(s.index(c, y, 0)), s.width,
                  v.begin() + static_cast<std::ptrdiff_t>(out.index(c, y + p, p)));
    }
  }
  return v;
}

template <typename T>
AccumulatorMap correlate(std::span<const T> input, const Shape3& in_shape,
                         const ConvLayerSpec& layer) {
  const auto& g = layer.geometry;
  if (in_shape != layer.input_shape) {
    throw ShapeMismatch(layer.name + ": input " + std::to_string(in_shape.channels) + "x" +
                        std::to_string(in_shape.height) + "x" +
                        std::to_string(in_shape.width) + " differs from the layer input");
  }
  const Shape3 out_shape = g.output_shape(in_shape);
  const auto padded = pad_planes(input, in_shape, g.padding);
  const Shape3 ps{in_shape.channels, in_shape.height + 2 * g.padding,
                  in_shape.width + 2 * g.padding};

  AccumulatorMap out(out_shape, layer.acc_exponent());
  const auto ipg = g.in_per_group();
  const auto opg = g.out_per_group();
  for (std::size_t o = 0; o < g.out_channels; ++o) {
    std::int32_t* plane = out.values.data() + o * out_shape.plane();
    std::fill_n(plane, out_shape.plane(), layer.bias[o]);
    const std::size_t first_in = (o / opg) * ipg;
    for (std::size_t i = 0; i < ipg; ++i) {
      for (std::size_t ky = 0; ky < g.kernel; ++ky) {
        for (std::size_t kx = 0; kx < g.kernel; ++kx) {
          const std::int32_t w = layer.weight(o, i, ky, kx);
          if (w == 0) continue;
          for (std::size_t oy = 0; oy < out_shape.height; ++oy) {
            const T* row = padded.data() + ps.index(first_in + i, oy * g.stride + ky, kx);
            std::int32_t* acc = plane + oy * out_shape.width;
            for (std::size_t ox = 0; ox < out_shape.width; ++ox) {
              acc[ox] += w * static_cast<std::int32_t>(row[ox * g.stride]);
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

SpikeMap pad2d(const SpikeMap& x, std::size_t p) {
  const auto& s = x.shape();
  return SpikeMap({s.channels, s.height + 2 * p, s.width + 2 * p},
                  pad_planes(x.values(), s, p));
}

IntTensor pad2d(const IntTensor& x, std::size_t p) {
  const Shape3 s = x.shape3();
  return IntTensor({s.channels, s.height + 2 * p, s.width + 2 * p},
                   pad_planes(x.values(), s, p), x.params());
}

AccumulatorMap conv2d_grouped(const SpikeMap& x, const ConvLayerSpec& layer) {
  if (layer.is_encoding()) {
    throw ShapeMismatch(layer.name + " expects a quantized image, got spikes");
  }
  return correlate(x.values(), x.shape(), layer);
}

AccumulatorMap conv2d_grouped(const IntTensor& x, const ConvLayerSpec& layer) {
  if (x.params().exponent() != layer.input_exponent) {
    throw ScaleMismatch(layer.name + ": input exponent " +
                        std::to_string(x.params().exponent()) + ", layer expects " +
                        std::to_string(layer.input_exponent));
  }
  return correlate(x.values(), x.shape3(), layer);
}

AccumulatorMap residual_add(const AccumulatorMap& a, const AccumulatorMap& b) {
  if (a.shape != b.shape) throw ShapeMismatch("residual operands differ in shape");
  if (a.scale_exponent != b.scale_exponent) {
    throw ScaleMismatch("residual operands at exponents " +
                        std::to_string(a.scale_exponent) + " and " +
                        std::to_string(b.scale_exponent));
  }
  AccumulatorMap out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

AccumulatorMap spikes_to_accumulator(const SpikeMap& x, int exponent) {
  if (exponent < 0 || exponent > 30) {
    throw ScaleMismatch("spikes cannot be represented at exponent " +
                        std::to_string(exponent));
  }
  AccumulatorMap out(x.shape(), exponent);
  const auto v = x.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.values[i] = static_cast<std::int32_t>(v[i]) << exponent;
  }
  return out;
}

PooledVector global_avg_pool(const SpikeMap& x) {
  const auto& s = x.shape();
  PooledVector p;
  p.area = static_cast<std::int64_t>(s.plane());
  p.sums.assign(s.channels, 0);
  const auto v = x.values();
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t j = 0; j < s.plane(); ++j) p.sums[c] += v[c * s.plane() + j];
  }
  return p;
}

InferenceResult fully_connected(const PooledVector& v, const FcLayerSpec& fc) {
  if (v.sums.size() != fc.in_features) {
    throw ShapeMismatch("fc expects " + std::to_string(fc.in_features) +
                        " features, got " + std::to_string(v.sums.size()));
  }
  if (v.area != fc.pool_area) throw ShapeMismatch("pool area differs from fc layer");
  InferenceResult r;
  r.scores.resize(fc.out_features);
  for (std::size_t o = 0; o < fc.out_features; ++o) {
    std::int64_t s = fc.bias[o];
    for (std::size_t i = 0; i < fc.in_features; ++i) {
      s += static_cast<std::int64_t>(fc.weights[o * fc.in_features + i]) * v.sums[i];
    }
    r.scores[o] = s;
  }
  r.label = argmax(r.scores);
  return r;
}

IntTensor quantize_image(const Image& image, const QuantParams& p) {
  if (image.pixels.size() != image.shape.size()) {
    throw ShapeMismatch("image pixel count does not match its shape");
  }
  std::vector<std::int32_t> q(image.pixels.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = quantize_value(static_cast<double>(image.pixels[i]) / 255.0, p);
  }
  const auto& s = image.shape;
  return IntTensor({s.channels, s.height, s.width}, std::move(q), p);
}

InferenceTrace infer_trace(const Image& image, const NetworkGraph& model) {
  if (model.layers.empty() || !model.fc) {
    throw InvalidConfig("inference needs an encoding layer and a classifier");
  }
  if (image.shape != model.input_shape) throw ShapeMismatch("image shape");
  InferenceTrace t;
  t.accumulators.resize(model.layers.size());
  t.spikes.resize(model.layers.size());
  t.input = quantize_image(image, model.input_params);

  const auto& stem = model.layers.front();
  t.accumulators[0] = conv2d_grouped(t.input, stem);
  t.spikes[0] = threshold_activate(t.accumulators[0], stem.threshold);
  const SpikeMap* current = &t.spikes[0];

  for (const auto& blk : model.blocks) {
    const auto& a = model.layers[blk.conv_a];
    const auto& b = model.layers[blk.conv_b];
    t.accumulators[blk.conv_a] = conv2d_grouped(*current, a);
    t.spikes[blk.conv_a] = threshold_activate(t.accumulators[blk.conv_a], a.threshold);
    const AccumulatorMap main = conv2d_grouped(t.spikes[blk.conv_a], b);
    AccumulatorMap shortcut;
    if (blk.shortcut) {
      t.accumulators[*blk.shortcut] =
          conv2d_grouped(*current, model.layers[*blk.shortcut]);
      shortcut = t.accumulators[*blk.shortcut];
    } else {
      shortcut = spikes_to_accumulator(*current, main.scale_exponent);
    }
    t.accumulators[blk.conv_b] = residual_add(main, shortcut);
    t.spikes[blk.conv_b] = threshold_activate(t.accumulators[blk.conv_b], b.threshold);
    current = &t.spikes[blk.conv_b];
  }
  t.pooled = global_avg_pool(*current);
  t.result = fully_connected(t.pooled, *model.fc);
  return t;
}

InferenceResult infer(const Image& image, const NetworkGraph& model) {
  return infer_trace(image, model).result;
}

std::vector<InferenceResult> infer_batch(std::span<const Image> images,
                                         const NetworkGraph& model,
                                         unsigned threads) {
  std::vector<InferenceResult> results(images.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(images.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < images.size(); ++i) results[i] = infer(images[i], model);
    return results;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < images.size(); i += threads) {
          results[i] = infer(images[i], model);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace snnaccel::golden
