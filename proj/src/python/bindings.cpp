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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "snnaccel/cli/cli.hpp"
#include "snnaccel/errors.hpp"
#include "snnaccel/golden.hpp"
#include "snnaccel/io/cifar10.hpp"
#include "snnaccel/io/model_file.hpp"
#include "snnaccel/model_prep.hpp"
#include "snnaccel/network.hpp"
#include "snnaccel/quant.hpp"
#include "snnaccel/sim/accelerator.hpp"

namespace py = pybind11;
using namespace snnaccel;

namespace {

std::vector<std::uint8_t> to_vector(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<Image> images_from_bytes(const py::bytes& b) {
  const auto raw = to_vector(b);
  if (raw.size() % io::kCifarPixels != 0) {
    throw ShapeMismatch("image bytes must be a multiple of 3072");
  }
  std::vector<Image> images(raw.size() / io::kCifarPixels);
  for (std::size_t i = 0; i < images.size(); ++i) {
    images[i].pixels.assign(raw.begin() + i * io::kCifarPixels,
                            raw.begin() + (i + 1) * io::kCifarPixels);
  }
  return images;
}

std::vector<int> labels_of(const std::vector<InferenceResult>& r) {
  std::vector<int> out;
  for (const auto& x : r) out.push_back(x.label);
  return out;
}

}  // namespace

PYBIND11_MODULE(_snnaccel, m) {
  m.doc() = "Single-timestep spiking ResNet: reference engine and accelerator model";

  py::register_exception<Error>(m, "Error");

  m.def("conv_param_count", &conv_param_count, py::arg("in_channels"),
        py::arg("out_channels"), py::arg("groups"), py::arg("kernel"));
  m.def(
      "default_param_count",
      [](std::size_t groups) {
        NetworkConfig cfg;
        cfg.groups = groups;
        return count_params(build_resnet10(cfg));
      },
      py::arg("groups") = 4);
  m.def(
      "compute_scale",
      [](double r_max, int bits) {
        const auto p = compute_scale(r_max, bits);
        return py::make_tuple(p.bits(), p.exponent());
      },
      py::arg("r_max"), py::arg("bits"), "Returns (bits, exponent); S = 2**exponent.");
  m.def(
      "quantize",
      [](const std::vector<double>& values, int bits, int exponent) {
        const QuantParams p(bits, exponent);
        std::vector<std::int32_t> out;
        for (double v : values) out.push_back(quantize_value(v, p));
        return out;
      },
      py::arg("values"), py::arg("bits"), py::arg("exponent"));
  m.def(
      "fake_quantize",
      [](const std::vector<double>& values, int bits) {
        const auto t = fake_quantize(RealTensor({values.size()}, values), bits);
        return std::vector<double>(t.values().begin(), t.values().end());
      },
      py::arg("values"), py::arg("bits"));

  m.def(
      "make_random_model",
      [](std::uint64_t seed, std::size_t groups, int bits) {
        NetworkConfig cfg;
        cfg.groups = groups;
        cfg.bits = bits;
        return to_bytes(io::save_model(make_random_model(cfg, seed)));
      },
      py::arg("seed"), py::arg("groups") = 4, py::arg("bits") = 8,
      "Seeded random quantized model, serialized in the model file format.");
  m.def(
      "model_param_count",
      [](const py::bytes& model) { return count_params(io::load_model(to_vector(model))); },
      py::arg("model"));
  m.def(
      "random_images",
      [](std::size_t count, std::uint64_t seed) {
        std::vector<std::uint8_t> raw;
        for (const auto& img : random_images(count, seed)) {
          raw.insert(raw.end(), img.pixels.begin(), img.pixels.end());
        }
        return to_bytes(raw);
      },
      py::arg("count"), py::arg("seed"));
  m.def(
      "parse_cifar10",
      [](const py::bytes& data) {
        const auto set = io::parse_cifar10(to_vector(data));
        py::list out;
        for (const auto& r : set.records) out.append(py::make_tuple(r.label, to_bytes(r.image.pixels)));
        return out;
      },
      py::arg("data"), "List of (label, 3072 pixel bytes).");

  m.def(
      "infer",
      [](const py::bytes& model, const py::bytes& images, unsigned threads) {
        const auto g = io::load_model(to_vector(model));
        const auto imgs = images_from_bytes(images);
        py::gil_scoped_release release;
        return labels_of(golden::infer_batch(imgs, g, threads));
      },
      py::arg("model"), py::arg("images"), py::arg("threads") = 1,
      "Labels from the reference engine; images are concatenated 3x32x32 bytes.");
  m.def(
      "simulate",
      [](const py::bytes& model, const py::bytes& images, double clock_hz) {
        const auto g = io::load_model(to_vector(model));
        const auto imgs = images_from_bytes(images);
        sim::SimOptions opts;
        opts.timing.clock_hz = clock_hz;
        sim::SimulationResult r;
        {
          py::gil_scoped_release release;
          r = sim::simulate_pipeline(g, imgs, opts);
        }
        py::dict d;
        d["labels"] = labels_of(r.results);
        d["latency_cycles"] = r.pipeline.latency_cycles;
        d["ii_cycles"] = r.pipeline.ii_cycles;
        d["total_cycles"] = r.pipeline.total_cycles;
        d["latency_ms"] = r.pipeline.latency_ms();
        d["fps"] = r.pipeline.fps();
        d["trace_causal"] = r.trace_causal;
        d["bram_bit_accesses"] = r.bram_bit_accesses;
        return d;
      },
      py::arg("model"), py::arg("images"), py::arg("clock_hz") = 1e8);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command; returns (exit code, stdout, stderr).");
}
