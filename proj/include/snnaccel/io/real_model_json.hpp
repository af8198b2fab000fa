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

#include <string>

#include "snnaccel/model_prep.hpp"

namespace snnaccel::io {

/// JSON form of a real-valued network, the input of the fuse and quantize
/// commands. Doubles are written with round-trip precision.
std::string real_network_to_json(const RealNetwork& net);
/// Throws CorruptFile on malformed documents.
RealNetwork real_network_from_json(const std::string& text);

void write_real_network(const std::string& path, const RealNetwork& net);
RealNetwork read_real_network(const std::string& path);

}  // namespace snnaccel::io
