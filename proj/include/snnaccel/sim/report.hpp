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

#include <iosfwd>

#include "snnaccel/sim/accelerator.hpp"
#include "snnaccel/sim/resources.hpp"

namespace snnaccel::sim {

inline constexpr int kReportVersion = 1;

/// Key-value report blocks; the schema is documented in
/// docs/report-format.md. Numbers use fixed formatting so identical runs
/// produce identical bytes.
void write_report_header(std::ostream& os);
void write_pipeline_report(std::ostream& os, const PipelineReport& r);
void write_resource_report(std::ostream& os, const ResourceReport& r);
void write_timing_config(std::ostream& os, const TimingConfig& t);

}  // namespace snnaccel::sim
