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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace snnaccel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming a JSON file of default option values.
inline constexpr const char* kConfigEnv = "SNNACCEL_CONFIG";

struct RunConfig {
  std::string command;
  std::string model_path;
  std::string data_path;
  std::string out_path;
  double clock_hz = 1e8;
  int bits = 8;
  std::size_t groups = 4;
  std::uint64_t seed = 1;
  /// Random images when no dataset is given.
  std::size_t images = 1;
  unsigned threads = 1;
  std::map<std::string, double> timing;

  /// Throws UsageError.
  void validate() const;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Merges a JSON defaults document into `cfg`. Recognized keys: model, data,
/// out, clock, bits, groups, seed, images, threads, timing (object).
void apply_config_json(RunConfig& cfg, const std::string& text);

/// Runs one command. `args` excludes the program name. Never throws.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snnaccel::cli
