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

#include "snnaccel/cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "snnaccel/errors.hpp"
#include "snnaccel/golden.hpp"
#include "snnaccel/io/cifar10.hpp"
#include "snnaccel/io/model_file.hpp"
#include "snnaccel/io/real_model_json.hpp"
#include "snnaccel/model_prep.hpp"
#include "snnaccel/network.hpp"
#include "snnaccel/sim/accelerator.hpp"
#include "snnaccel/sim/report.hpp"
#include "snnaccel/sim/resources.hpp"

namespace snnaccel::cli {

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

NetworkConfig network_config(const RunConfig& cfg) {
  NetworkConfig n;
  n.groups = cfg.groups;
  n.bits = cfg.bits;
  return n;
}

NetworkGraph load_or_make_model(const RunConfig& cfg) {
  if (!cfg.model_path.empty()) return io::read_model_file(cfg.model_path);
  return make_random_model(network_config(cfg), cfg.seed);
}

struct Dataset {
  std::vector<Image> images;
  std::vector<int> labels;  // empty for random images
};

/// Random images use seed + 1 so they differ from the model's stream.
Dataset load_or_make_images(const RunConfig& cfg) {
  Dataset d;
  if (!cfg.data_path.empty()) {
    auto set = io::load_cifar10(cfg.data_path);
    if (cfg.images > 0 && cfg.images < set.records.size()) set.records.resize(cfg.images);
    d.images = set.images();
    d.labels = set.labels();
  } else {
    d.images = random_images(cfg.images, cfg.seed + 1);
  }
  return d;
}

sim::TimingConfig timing_config(const RunConfig& cfg) {
  sim::TimingConfig t;
  t.clock_hz = cfg.clock_hz;
  for (const auto& [k, v] : cfg.timing) t.set(k, v);
  t.validate();
  return t;
}

/// Writes to --out when given, else to `out`.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& out) : path_(cfg.out_path), out_(out) {}
  std::ostream& stream() { return path_.empty() ? out_ : buf_; }
  void finish() {
    if (path_.empty()) return;
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidConfig("cannot write '" + path_ + "'");
    f << buf_.str();
    if (!f) throw InvalidConfig("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostringstream buf_;
};

void kv(std::ostream& os, const std::string& k, const std::string& v) {
  os << k << " = " << v << '\n';
}
template <typename T>
void kv(std::ostream& os, const std::string& k, T v) {
  os << k << " = " << v << '\n';
}

std::string model_source(const RunConfig& cfg) {
  return cfg.model_path.empty() ? "random" : cfg.model_path;
}

int cmd_param_count(const RunConfig& cfg, bool table, std::ostream& out) {
  const auto model = cfg.model_path.empty() ? build_resnet10(network_config(cfg))
                                            : io::read_model_file(cfg.model_path);
  const auto rows = param_breakdown(model);
  std::size_t standard = 0;
  for (const auto& r : rows) standard += r.standard;
  const auto total = count_params(model);
  Sink sink(cfg, out);
  auto& os = sink.stream();
  sim::write_report_header(os);
  os << "\n[param-count]\n";
  kv(os, "model", cfg.model_path.empty() ? std::string("default") : cfg.model_path);
  kv(os, "groups", cfg.model_path.empty() ? cfg.groups : std::size_t{0});
  kv(os, "trainable_layers", model.trainable_weight_layers());
  kv(os, "total", total);
  kv(os, "total_with_bias", count_params(model, {.include_bias = true}));
  kv(os, "total_standard", standard);
  kv(os, "total_millions", fixed(static_cast<double>(total) / 1e6));
  kv(os, "reduction", fixed(static_cast<double>(standard) / static_cast<double>(total)));
  for (const auto& r : rows) {
    os << "\n[layer " << r.name << "]\n";
    kv(os, "standard", r.standard);
    kv(os, "grouped", r.grouped);
  }
  if (table) {
    os << '\n' << std::left << std::setw(12) << "# layer" << std::right << std::setw(12)
       << "standard" << std::setw(12) << "grouped" << '\n';
    for (const auto& r : rows) {
      os << "# " << std::left << std::setw(10) << r.name << std::right << std::setw(12)
         << r.standard << std::setw(12) << r.grouped << '\n';
    }
    os << "# " << std::left << std::setw(10) << "total" << std::right << std::setw(12)
       << standard << std::setw(12) << total << '\n';
  }
  sink.finish();
  return kExitOk;
}

int cmd_fuse(const RunConfig& cfg, std::ostream& out) {
  if (cfg.model_path.empty()) throw UsageError("fuse needs --model <real.json>");
  const auto fused = fuse_network(io::read_real_network(cfg.model_path));
  Sink sink(cfg, out);
  sink.stream() << io::real_network_to_json(fused);
  sink.finish();
  return kExitOk;
}

int cmd_quantize(const RunConfig& cfg, std::ostream& out) {
  if (cfg.model_path.empty()) throw UsageError("quantize needs --model <fused.json>");
  if (cfg.out_path.empty()) throw UsageError("quantize needs --out <model file>");
  const auto model = quantize_network(io::read_real_network(cfg.model_path), cfg.bits);
  io::write_model_file(cfg.out_path, model);
  sim::write_report_header(out);
  out << "\n[quantize]\n";
  kv(out, "bits", cfg.bits);
  kv(out, "layers", model.layers.size());
  kv(out, "params", count_params(model));
  kv(out, "out", cfg.out_path);
  for (const auto& l : model.layers) {
    out << "\n[layer " << l.name << "]\n";
    kv(out, "weight_exponent", l.weights.params().exponent());
    kv(out, "acc_exponent", l.acc_exponent());
    kv(out, "threshold", l.threshold);
  }
  return kExitOk;
}

void write_results(std::ostream& os, const std::vector<InferenceResult>& results,
                   const std::vector<int>& truth) {
  std::vector<int> labels;
  for (const auto& r : results) labels.push_back(r.label);
  kv(os, "images", results.size());
  if (!truth.empty()) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) correct += labels[i] == truth[i];
    kv(os, "correct", correct);
    kv(os, "accuracy", fixed(labels.empty() ? 0.0
                                            : static_cast<double>(correct) /
                                                  static_cast<double>(labels.size())));
  }
  kv(os, "labels", join(labels));
}

int cmd_infer(const RunConfig& cfg, std::ostream& out) {
  const auto model = load_or_make_model(cfg);
  const auto data = load_or_make_images(cfg);
  const auto results = golden::infer_batch(data.images, model, cfg.threads);
  Sink sink(cfg, out);
  auto& os = sink.stream();
  sim::write_report_header(os);
  os << "\n[infer]\n";
  kv(os, "model", model_source(cfg));
  kv(os, "data", cfg.data_path.empty() ? std::string("random") : cfg.data_path);
  kv(os, "seed", cfg.seed);
  write_results(os, results, data.labels);
  sink.finish();
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, bool verify, std::ostream& out, std::ostream& err) {
  const auto model = load_or_make_model(cfg);
  const auto data = load_or_make_images(cfg);
  sim::SimOptions opts;
  opts.timing = timing_config(cfg);
  const auto r = sim::simulate_pipeline(model, data.images, opts);
  const auto mapping = sim::default_mapping(model);
  const auto resources = sim::resource_report(model, mapping, opts.timing);
  bool match = true;
  if (verify) match = golden::infer_batch(data.images, model, cfg.threads) == r.results;

  Sink sink(cfg, out);
  auto& os = sink.stream();
  sim::write_report_header(os);
  os << "\n[simulate]\n";
  kv(os, "model", model_source(cfg));
  kv(os, "data", cfg.data_path.empty() ? std::string("random") : cfg.data_path);
  kv(os, "seed", cfg.seed);
  write_results(os, r.results, data.labels);
  if (verify) kv(os, "golden_match", std::string(match ? "true" : "false"));
  kv(os, "trace_causal", std::string(r.trace_causal ? "true" : "false"));
  kv(os, "macs", r.activity.macs);
  kv(os, "gated_adds", r.activity.gated_adds);
  kv(os, "gated_slots", r.activity.gated_slots);
  kv(os, "bram_bit_accesses", r.bram_bit_accesses);
  kv(os, "energy_proxy", fixed(sim::energy_proxy(r.activity.macs, r.activity.gated_adds,
                                                 r.bram_bit_accesses, {}),
                               3));
  sim::write_pipeline_report(os, r.pipeline);
  sim::write_resource_report(os, resources);
  sim::write_timing_config(os, opts.timing);
  sink.finish();
  if (!match) {
    err << "error: simulator labels differ from the reference engine\n";
    return kExitDataError;
  }
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const auto model = load_or_make_model(cfg);
  sim::SimOptions opts;
  opts.timing = timing_config(cfg);
  const auto pipeline = sim::estimate_pipeline(model, opts, cfg.images);
  const auto resources = sim::resource_report(model, sim::default_mapping(model), opts.timing);
  Sink sink(cfg, out);
  auto& os = sink.stream();
  sim::write_report_header(os);
  os << "\n[model]\n";
  kv(os, "model", model_source(cfg));
  kv(os, "layers", model.layers.size());
  kv(os, "params", count_params(model));
  sim::write_pipeline_report(os, pipeline);
  sim::write_resource_report(os, resources);
  sim::write_timing_config(os, opts.timing);
  sink.finish();
  return kExitOk;
}

int cmd_make_random_model(const RunConfig& cfg, bool real, std::ostream& out) {
  if (cfg.out_path.empty()) throw UsageError("make-random-model needs --out <path>");
  const auto ncfg = network_config(cfg);
  sim::write_report_header(out);
  out << "\n[make-random-model]\n";
  kv(out, "seed", cfg.seed);
  kv(out, "groups", cfg.groups);
  if (real) {
    io::write_real_network(cfg.out_path, random_real_network(ncfg, cfg.seed));
    kv(out, "format", std::string("real-json"));
  } else {
    const auto model = make_random_model(ncfg, cfg.seed);
    io::write_model_file(cfg.out_path, model);
    kv(out, "format", std::string("quantized"));
    kv(out, "bits", cfg.bits);
    kv(out, "params", count_params(model));
  }
  kv(out, "out", cfg.out_path);
  return kExitOk;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// --config wins over the environment variable.
std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  const char* env = std::getenv(kConfigEnv);
  return env ? env : "";
}

std::map<std::string, double> parse_timing(const std::vector<std::string>& pairs) {
  std::map<std::string, double> m;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--timing expects key=value, got '" + p + "'");
    }
    const std::string value = p.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      throw UsageError("--timing value '" + value + "' is not a number");
    }
    m[p.substr(0, eq)] = v;
  }
  return m;
}

}  // namespace

void RunConfig::validate() const {
  if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) {
    throw UsageError("clock frequency must be positive");
  }
  if (bits < kMinBits || bits > kMaxBits) throw UsageError("bit width must be in [2, 16]");
  if (groups == 0) throw UsageError("group count must be positive");
  if (threads == 0) throw UsageError("thread count must be positive");
  try {
    sim::TimingConfig t;
    t.clock_hz = clock_hz;
    for (const auto& [k, v] : timing) t.set(k, v);
    t.validate();
    network_config(*this).validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void apply_config_json(RunConfig& cfg, const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "model") cfg.model_path = v.get<std::string>();
      else if (key == "data") cfg.data_path = v.get<std::string>();
      else if (key == "out") cfg.out_path = v.get<std::string>();
      else if (key == "clock") cfg.clock_hz = v.get<double>();
      else if (key == "bits") cfg.bits = v.get<int>();
      else if (key == "groups") cfg.groups = v.get<std::size_t>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "images") cfg.images = v.get<std::size_t>();
      else if (key == "threads") cfg.threads = v.get<unsigned>();
      else if (key == "timing") {
        for (const auto& [tk, tv] : v.items()) cfg.timing[tk] = tv.get<double>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    const auto path = config_path(args);
    if (!path.empty()) apply_config_json(cfg, read_text(path));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Single-timestep spiking ResNet accelerator toolkit"};
  app.require_subcommand(1);
  std::string config_flag;
  app.add_option("--config", config_flag, "JSON file of default option values");

  std::vector<std::string> timing_pairs;
  bool table = false;
  bool real = false;
  bool verify = false;
  auto model_opt = [&](CLI::App* s, const char* help) {
    s->add_option("--model", cfg.model_path, help);
  };
  auto out_opt = [&](CLI::App* s) {
    s->add_option("--out", cfg.out_path, "Output path (default: stdout)");
  };
  auto seed_opt = [&](CLI::App* s) {
    s->add_option("--seed", cfg.seed, "Seed for random models and images")
        ->capture_default_str();
  };
  auto arch_opts = [&](CLI::App* s) {
    s->add_option("--groups", cfg.groups, "Group count")->capture_default_str();
    s->add_option("--bits", cfg.bits, "Weight bit width")->capture_default_str();
  };
  auto data_opts = [&](CLI::App* s) {
    s->add_option("--data", cfg.data_path, "CIFAR-10 binary batch");
    s->add_option("--images", cfg.images,
                  "Random image count, or a cap on dataset records")
        ->capture_default_str();
  };
  auto timing_opts = [&](CLI::App* s) {
    s->add_option("--clock", cfg.clock_hz, "Clock frequency in Hz")->capture_default_str();
    s->add_option("--timing", timing_pairs, "Timing override key=value (repeatable)");
  };

  auto* pc = app.add_subcommand("param-count", "Per-layer and total weight counts");
  model_opt(pc, "Quantized model file (default: built-in topology)");
  arch_opts(pc);
  out_opt(pc);
  pc->add_flag("--table", table, "Append a human-readable table");

  auto* fuse = app.add_subcommand("fuse", "Fold batch norm into a real-valued model");
  model_opt(fuse, "Real-valued model JSON");
  out_opt(fuse);

  auto* quant = app.add_subcommand("quantize", "Quantize a fused real-valued model");
  model_opt(quant, "Fused real-valued model JSON");
  quant->add_option("--bits", cfg.bits, "Weight bit width")->capture_default_str();
  out_opt(quant);

  auto* infer = app.add_subcommand("infer", "Classify images with the reference engine");
  model_opt(infer, "Quantized model file (default: seeded random model)");
  arch_opts(infer);
  data_opts(infer);
  seed_opt(infer);
  out_opt(infer);
  infer->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Run images through the accelerator model");
  model_opt(simulate, "Quantized model file (default: seeded random model)");
  arch_opts(simulate);
  data_opts(simulate);
  seed_opt(simulate);
  timing_opts(simulate);
  out_opt(simulate);
  simulate->add_flag("--verify", verify, "Compare labels with the reference engine");
  simulate->add_option("--threads", cfg.threads, "Reference-engine threads for --verify")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "Static timing and resource report");
  model_opt(report, "Quantized model file (default: seeded random model)");
  arch_opts(report);
  seed_opt(report);
  timing_opts(report);
  report->add_option("--images", cfg.images, "Images in the modeled stream")
      ->capture_default_str();
  out_opt(report);

  auto* mrm = app.add_subcommand("make-random-model", "Write a seeded random model");
  arch_opts(mrm);
  seed_opt(mrm);
  out_opt(mrm);
  mrm->add_flag("--real", real, "Write the unfused real-valued JSON model instead");

  // Accepted after the subcommand too; the value was applied above.
  for (auto* s : app.get_subcommands({})) {
    s->add_option("--config", config_flag, "JSON file of default option values");
  }

  std::vector<std::string> argv_store{"snnaccel"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& [k, v] : parse_timing(timing_pairs)) cfg.timing[k] = v;
    cfg.validate();
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "param-count") return cmd_param_count(cfg, table, out);
    if (cfg.command == "fuse") return cmd_fuse(cfg, out);
    if (cfg.command == "quantize") return cmd_quantize(cfg, out);
    if (cfg.command == "infer") return cmd_infer(cfg, out);
    if (cfg.command == "simulate") return cmd_simulate(cfg, verify, out, err);
    if (cfg.command == "report") return cmd_report(cfg, out);
    if (cfg.command == "make-random-model") return cmd_make_random_model(cfg, real, out);
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace snnaccel::cli
