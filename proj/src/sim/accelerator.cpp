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

#include "snnaccel/sim/accelerator.hpp"

#include <algorithm>
#include <bit>

#include "snnaccel/errors.hpp"

namespace snnaccel::sim {

namespace {

constexpr const char* kPoolBuffer = "pool.out";
constexpr const char* kFcWeights = "fc.weights";

Shape3 final_map_shape(const NetworkGraph& model) {
  if (model.blocks.empty()) return model.layers.front().output_shape();
  return model.layers[model.blocks.back().conv_b].output_shape();
}

std::int64_t counter_bits(std::int64_t area) {
  return static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(area)));
}

}  // namespace

double PipelineReport::latency_ms() const {
  return 1e3 * static_cast<double>(latency_cycles) / clock_hz;
}

double PipelineReport::fps() const {
  return ii_cycles > 0 ? clock_hz / static_cast<double>(ii_cycles) : 0.0;
}

double PipelineReport::fps_latency() const {
  return latency_cycles > 0 ? clock_hz / static_cast<double>(latency_cycles) : 0.0;
}

double PipelineReport::occupancy(std::size_t stage) const {
  return ii_cycles > 0
             ? static_cast<double>(stages.at(stage).cycles) / static_cast<double>(ii_cycles)
             : 0.0;
}

PipelineReport make_pipeline_report(std::vector<PipelineStage> stages, double clock_hz,
                                    std::size_t images) {
  if (!(clock_hz > 0.0)) throw InvalidConfig("clock frequency must be positive");
  PipelineReport r;
  r.clock_hz = clock_hz;
  r.images = images;
  r.stages = std::move(stages);
  for (const auto& s : r.stages) {
    r.latency_cycles += s.cycles;
    r.ii_cycles = std::max(r.ii_cycles, s.cycles);
  }
  r.total_cycles =
      images == 0 ? 0
                  : r.latency_cycles + static_cast<std::int64_t>(images - 1) * r.ii_cycles;
  return r;
}

std::int64_t pool_cycles(const Shape3& map, const TimingConfig& timing) {
  return static_cast<std::int64_t>(map.plane()) * timing.pool_cycles_per_position +
         timing.pool_overhead_cycles;
}

std::int64_t fc_cycles(const FcLayerSpec& fc, const TimingConfig& timing) {
  const auto terms = static_cast<std::int64_t>(fc.in_features * fc.out_features);
  return (terms + timing.fc_multipliers - 1) / timing.fc_multipliers +
         timing.fc_overhead_cycles;
}

std::vector<PipelineStage> pipeline_stages(const NetworkGraph& model,
                                           std::span<const PeArrayGeometry> mapping,
                                           const TimingConfig& timing) {
  if (mapping.size() != model.layers.size()) {
    throw GeometryMismatch("mapping has " + std::to_string(mapping.size()) +
                           " geometries for " + std::to_string(model.layers.size()) +
                           " layers");
  }
  std::vector<PipelineStage> stages;
  if (model.layers.empty()) return stages;
  auto cycles = [&](std::size_t i) {
    return layer_timing(model.layers[i], mapping[i], timing).cycles;
  };
  stages.push_back({model.layers[0].name, {model.layers[0].name}, cycles(0)});
  for (const auto& blk : model.blocks) {
    PipelineStage first{model.layers[blk.conv_a].name, {model.layers[blk.conv_a].name},
                        cycles(blk.conv_a)};
    if (blk.shortcut) {
      const auto& sc = model.layers[*blk.shortcut];
      first.name += "+" + sc.name;
      first.layers.push_back(sc.name);
      first.cycles = std::max(first.cycles, cycles(*blk.shortcut));
    }
    stages.push_back(std::move(first));
    stages.push_back({model.layers[blk.conv_b].name, {model.layers[blk.conv_b].name},
                      cycles(blk.conv_b)});
  }
  if (model.fc) {
    stages.push_back({"pool", {"pool"}, pool_cycles(final_map_shape(model), timing)});
    stages.push_back({"fc", {"fc"}, fc_cycles(*model.fc, timing)});
  }
  return stages;
}

PipelineReport estimate_pipeline(const NetworkGraph& model, const SimOptions& opts,
                                 std::size_t images) {
  opts.timing.validate();
  const auto mapping = opts.mapping.empty() ? default_mapping(model) : opts.mapping;
  return make_pipeline_report(pipeline_stages(model, mapping, opts.timing),
                              opts.timing.clock_hz, images);
}

Accelerator::Accelerator(NetworkGraph model, SimOptions opts)
    : model_(std::move(model)),
      opts_(std::move(opts)),
      bram_((opts_.timing.validate(), opts_.timing.bram_capacity_bits)) {
  model_.validate();
  if (model_.layers.empty() || !model_.fc) {
    throw InvalidConfig("the accelerator needs an encoding layer and a classifier");
  }
  mapping_ = opts_.mapping.empty() ? default_mapping(model_) : opts_.mapping;
  bram_.set_tracing(opts_.trace);
  stages_ = pipeline_stages(model_, mapping_, opts_.timing);

  bram_.allocate(kInputBuffer,
                 static_cast<std::int64_t>(model_.input_shape.size()) *
                     model_.input_params.bits());
  for (std::size_t i = 0; i < model_.layers.size(); ++i) {
    const auto& l = model_.layers[i];
    packed_.push_back(io::pack_weights(l, mapping_[i]));
    load_layer_weights(bram_, l, packed_.back());
  }
  for (const auto& l : model_.layers) {
    bram_.allocate(output_buffer(l.name),
                   static_cast<std::int64_t>(l.output_shape().size()) *
                       output_bits(l, opts_.timing));
  }
  const auto& fc = *model_.fc;
  const std::int64_t fc_bits =
      static_cast<std::int64_t>(fc.weights.size()) * fc.weights.params().bits() +
      static_cast<std::int64_t>(fc.bias.size()) * 32;
  bram_.allocate(kFcWeights, fc_bits);
  bram_.preload(kFcWeights, fc_bits);
  bram_.allocate(kPoolBuffer,
                 static_cast<std::int64_t>(fc.in_features) * counter_bits(fc.pool_area));

  layer_offset_.assign(model_.layers.size(), 0);
  std::int64_t offset = 0;
  for (const auto& stage : stages_) {
    for (const auto& name : stage.layers) {
      if (name == "pool") {
        pool_offset_ = offset;
      } else if (name == "fc") {
        fc_offset_ = offset;
      } else {
        for (std::size_t i = 0; i < model_.layers.size(); ++i) {
          if (model_.layers[i].name == name) layer_offset_[i] = offset;
        }
      }
    }
    offset += stage.cycles;
    ii_ = std::max(ii_, stage.cycles);
  }
}

PipelineReport Accelerator::pipeline_report(std::size_t images) const {
  return make_pipeline_report(stages_, opts_.timing.clock_hz, images);
}

ImageRun Accelerator::run(const Image& image) {
  if (image.shape != model_.input_shape || image.pixels.size() != image.shape.size()) {
    throw ShapeMismatch("image does not match the network input");
  }
  const std::size_t idx = images_++;
  const std::int64_t base = static_cast<std::int64_t>(idx) * ii_;
  const auto& timing = opts_.timing;

  FeatureBuffer pixels;
  pixels.shape = image.shape;
  pixels.bits_per_value = model_.input_params.bits();
  pixels.scale_exponent = model_.input_params.exponent();
  pixels.values.resize(image.pixels.size());
  for (std::size_t i = 0; i < pixels.values.size(); ++i) {
    pixels.values[i] =
        quantize_value(static_cast<double>(image.pixels[i]) / 255.0, model_.input_params);
  }
  bram_.write(idx, base, "host", kInputBuffer, pixels.bits());

  ImageRun out;
  out.accumulators.resize(model_.layers.size());
  out.spikes.resize(model_.layers.size());
  out.timing.resize(model_.layers.size());

  auto run_layer = [&](std::size_t i, const FeatureBuffer& in, const std::string& in_name,
                       const AccumulatorMap* residual, const std::string& residual_name,
                       std::int64_t residual_bits) {
    LayerContext ctx;
    ctx.bram = &bram_;
    ctx.image = idx;
    ctx.start_cycle = base + layer_offset_[i];
    ctx.input_buffer = in_name;
    ctx.residual_buffer = residual_name;
    ctx.residual_bits = residual_bits;
    auto r = simulate_layer(model_.layers[i], packed_[i], mapping_[i], in, timing, ctx,
                            residual);
    out.activity += r.activity;
    out.timing[i] = r.timing;
    out.accumulators[i] = std::move(r.accumulators);
    if (r.spikes) out.spikes[i] = std::move(*r.spikes);
  };

  run_layer(0, pixels, kInputBuffer, nullptr, "", 0);
  FeatureBuffer current = from_spikes(out.spikes[0]);
  std::string current_name = output_buffer(model_.layers[0].name);

  for (const auto& blk : model_.blocks) {
    run_layer(blk.conv_a, current, current_name, nullptr, "", 0);
    const auto& b = model_.layers[blk.conv_b];
    AccumulatorMap residual;
    std::string residual_name;
    std::int64_t residual_bits = 1;
    if (blk.shortcut) {
      run_layer(*blk.shortcut, current, current_name, nullptr, "", 0);
      residual = out.accumulators[*blk.shortcut];
      residual_name = output_buffer(model_.layers[*blk.shortcut].name);
      residual_bits = timing.accumulator_bits;
    } else {
      residual = AccumulatorMap(current.shape, b.acc_exponent());
      for (std::size_t j = 0; j < current.values.size(); ++j) {
        residual.values[j] = current.values[j] << b.acc_exponent();
      }
      residual_name = current_name;
    }
    run_layer(blk.conv_b, from_spikes(out.spikes[blk.conv_a]),
              output_buffer(model_.layers[blk.conv_a].name), &residual, residual_name,
              residual_bits);
    current = from_spikes(out.spikes[blk.conv_b]);
    current_name = output_buffer(b.name);
  }

  const auto& fc = *model_.fc;
  const Shape3& s = current.shape;
  bram_.read(idx, base + pool_offset_, "pool", current_name, current.bits());
  std::vector<std::int64_t> counts(s.channels, 0);
  for (std::size_t c = 0; c < s.channels; ++c) {
    for (std::size_t j = 0; j < s.plane(); ++j) counts[c] += current.values[c * s.plane() + j];
  }
  bram_.write(idx, base + pool_offset_ + pool_cycles(s, timing), "pool", kPoolBuffer,
              bram_.bank(kPoolBuffer).capacity_bits);

  bram_.read(idx, base + fc_offset_, "fc", kPoolBuffer, bram_.bank(kPoolBuffer).capacity_bits);
  bram_.read(idx, base + fc_offset_, "fc", kFcWeights, bram_.bank(kFcWeights).capacity_bits);
  out.result.scores.assign(fc.out_features, 0);
  for (std::size_t o = 0; o < fc.out_features; ++o) {
    std::int64_t acc = fc.bias[o];
    for (std::size_t i = 0; i < fc.in_features; ++i) {
      acc += static_cast<std::int64_t>(fc.weights[o * fc.in_features + i]) * counts[i];
    }
    out.result.scores[o] = acc;
  }
  out.activity.macs += static_cast<std::int64_t>(fc.in_features * fc.out_features);
  out.result.label = argmax(out.result.scores);
  activity_ += out.activity;
  return out;
}

SimulationResult simulate_pipeline(const NetworkGraph& model, std::span<const Image> images,
                                   const SimOptions& opts) {
  Accelerator acc(model, opts);
  SimulationResult r;
  for (const auto& img : images) r.results.push_back(acc.run(img).result);
  r.pipeline = acc.pipeline_report(images.size());
  r.activity = acc.activity();
  r.bram_bit_accesses = acc.bram().bit_accesses();
  r.trace_causal = !opts.trace || trace_is_causal(acc.bram());
  return r;
}

}  // namespace snnaccel::sim
