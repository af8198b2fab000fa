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

#include "snnaccel/sim/layer_sim.hpp"

#include "snnaccel/errors.hpp"

namespace snnaccel::sim {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::string weights_buffer(const std::string& layer) { return layer + ".weights"; }
std::string output_buffer(const std::string& layer) { return layer + ".out"; }

std::int64_t output_bits(const ConvLayerSpec& layer, const TimingConfig& timing) {
  return layer.is_residual_1x1() ? timing.accumulator_bits : 1;
}

std::vector<StageCosts> layer_stage_costs(const ConvLayerSpec& layer,
                                          const TileSchedule& schedule,
                                          const TimingConfig& timing) {
  const auto& g = layer.geometry;
  const auto padded_h = static_cast<std::int64_t>(layer.input_shape.height + 2 * g.padding);
  const auto padded_w = static_cast<std::int64_t>(layer.input_shape.width + 2 * g.padding);
  const auto plane = static_cast<std::int64_t>(schedule.output.plane());
  const auto kernel = static_cast<std::int64_t>(g.kernel);
  const auto out_bits = output_bits(layer, timing);

  std::vector<StageCosts> costs;
  costs.reserve(schedule.tiles.size());
  for (const auto& t : schedule.tiles) {
    StageCosts c{};
    c[kPad] = timing.pad_cycles_per_row * padded_h;
    c[kInput] = timing.weight_switch_cycles +
                timing.line_buffer_cycles_per_column * (kernel - 1) * padded_w;
    c[kCompute] = plane + timing.pipeline_fill_cycles;
    c[kOutput] = t.last_pass()
                     ? ceil_div(static_cast<std::int64_t>(t.out_count) * plane * out_bits,
                                timing.output_bits_per_cycle)
                     : 0;
    costs.push_back(c);
  }
  return costs;
}

LayerTiming layer_timing(const ConvLayerSpec& layer, const PeArrayGeometry& geom,
                         const TimingConfig& timing) {
  const auto schedule = tile_layer(layer, geom);
  const auto costs = layer_stage_costs(layer, schedule, timing);
  const auto sched = schedule_stages(costs);
  LayerTiming t;
  t.layer = layer.name;
  t.invocations = static_cast<std::int64_t>(schedule.invocations());
  t.compute_cycles = t.invocations * static_cast<std::int64_t>(schedule.output.plane());
  t.cycles = sched.makespan;
  t.stage_busy = sched.busy;
  for (auto b : sched.busy) t.sequential_cycles += b;
  return t;
}

void load_layer_weights(BramModel& bram, const ConvLayerSpec& layer,
                        const io::PackedWeights& packed) {
  const std::int64_t bits =
      static_cast<std::int64_t>(packed.elements()) * packed.params.bits() +
      static_cast<std::int64_t>(layer.bias.size()) * 32;
  bram.allocate(weights_buffer(layer.name), bits);
  bram.preload(weights_buffer(layer.name), bits);
}

LayerSimResult simulate_layer(const ConvLayerSpec& layer,
                              const io::PackedWeights& weights,
                              const PeArrayGeometry& geom,
                              const FeatureBuffer& input,
                              const TimingConfig& timing, const LayerContext& ctx,
                              const AccumulatorMap* residual) {
  if (ctx.bram == nullptr) throw InvalidConfig("simulate_layer needs a BRAM model");
  BramModel& bram = *ctx.bram;
  if (!bram.has(weights_buffer(layer.name))) {
    throw InvalidConfig(layer.name + ": weights are not resident in BRAM");
  }
  if (input.shape != layer.input_shape) {
    throw ShapeMismatch(layer.name + ": input buffer shape differs from the layer input");
  }
  if (input.scale_exponent != layer.input_exponent) {
    throw ScaleMismatch(layer.name + ": input buffer exponent differs");
  }
  if (weights.conv != layer.geometry || !(weights.array == geom)) {
    throw GeometryMismatch(layer.name + ": packed weights were laid out for another mapping");
  }
  const auto schedule = tile_layer(layer, geom);
  if (weights.segments.size() != schedule.tiles.size()) {
    throw GeometryMismatch(layer.name + ": packed segments do not match the schedule");
  }
  const Shape3 out_shape = schedule.output;
  if (residual) {
    if (residual->shape != out_shape) throw ShapeMismatch(layer.name + ": residual operand shape");
    if (residual->scale_exponent != layer.acc_exponent()) {
      throw ScaleMismatch(layer.name + ": residual operand scale");
    }
  }
  const auto out_bits = output_bits(layer, timing);
  bram.allocate(output_buffer(layer.name),
                static_cast<std::int64_t>(out_shape.size()) * out_bits);

  const auto costs = layer_stage_costs(layer, schedule, timing);
  const auto sched = schedule_stages(costs);
  const auto plane = out_shape.plane();
  const auto in_plane = static_cast<std::int64_t>(input.shape.plane());
  const std::int64_t t0 = ctx.start_cycle;

  LayerSimResult result;
  result.accumulators = AccumulatorMap(out_shape, layer.acc_exponent());
  const bool fires = !layer.is_residual_1x1();
  if (fires) result.spikes = SpikeMap(out_shape);

  const FeatureBuffer padded = pad_buffer(input, layer.geometry.padding);
  std::vector<PartialSums> partials;
  for (std::size_t i = 0; i < schedule.tiles.size(); ++i) {
    const auto& tile = schedule.tiles[i];
    const auto& when = sched.items[i];
    bram.read(ctx.image, t0 + when[kPad].start, layer.name, ctx.input_buffer,
              static_cast<std::int64_t>(tile.in_count) * in_plane * input.bits_per_value);
    bram.read(ctx.image, t0 + when[kInput].start, layer.name, weights_buffer(layer.name),
              static_cast<std::int64_t>(weights.segments[i].count) * weights.params.bits());

    auto run = run_pe_array(tile, io::WeightStream(weights, i), padded, layer.geometry,
                            geom, timing);
    result.activity += run.activity;
    partials.push_back(std::move(run.partial));
    if (!tile.last_pass()) continue;

    const PartialSums fsum = accumulate_group(partials);
    partials.clear();
    const auto tile_values = static_cast<std::int64_t>(tile.out_count * plane);
    if (residual) {
      bram.read(ctx.image, t0 + when[kOutput].start, layer.name, ctx.residual_buffer,
                tile_values * ctx.residual_bits);
    }
    for (std::size_t c = 0; c < tile.out_count; ++c) {
      const std::size_t o = tile.out_begin + c;
      for (std::size_t j = 0; j < plane; ++j) {
        std::int32_t v = fsum.values[c * plane + j] + layer.bias[o];
        if (residual) v += residual->values[o * plane + j];
        result.accumulators.values[o * plane + j] = v;
      }
    }
    if (fires) {
      for (std::size_t c = 0; c < tile.out_count; ++c) {
        const std::size_t o = tile.out_begin + c;
        for (std::size_t y = 0; y < out_shape.height; ++y) {
          for (std::size_t x = 0; x < out_shape.width; ++x) {
            result.spikes->set(o, y, x, result.accumulators.at(o, y, x) > layer.threshold);
          }
        }
      }
    }
    bram.write(ctx.image, t0 + when[kOutput].finish, layer.name, output_buffer(layer.name),
               tile_values * out_bits);
  }

  result.timing.layer = layer.name;
  result.timing.invocations = static_cast<std::int64_t>(schedule.invocations());
  result.timing.compute_cycles = result.timing.invocations * static_cast<std::int64_t>(plane);
  result.timing.cycles = sched.makespan;
  result.timing.stage_busy = sched.busy;
  for (auto b : sched.busy) result.timing.sequential_cycles += b;
  return result;
}

}  // namespace snnaccel::sim
