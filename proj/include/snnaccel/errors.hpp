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

#include <stdexcept>
#include <string>

namespace snnaccel {

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 1 (data errors).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SNNACCEL_DEFINE_ERROR(Name)        \
  class Name : public Error {              \
   public:                                 \
    explicit Name(const std::string& msg)  \
        : Error(#Name ": " + msg) {}       \
  }

SNNACCEL_DEFINE_ERROR(InvalidParams);
SNNACCEL_DEFINE_ERROR(DegenerateRange);
SNNACCEL_DEFINE_ERROR(ShapeMismatch);
SNNACCEL_DEFINE_ERROR(ScaleMismatch);
SNNACCEL_DEFINE_ERROR(IndivisibleGroups);
SNNACCEL_DEFINE_ERROR(InvalidConfig);
SNNACCEL_DEFINE_ERROR(GeometryMismatch);
SNNACCEL_DEFINE_ERROR(CapacityExceeded);
SNNACCEL_DEFINE_ERROR(CorruptFile);
SNNACCEL_DEFINE_ERROR(BadLabel);

#undef SNNACCEL_DEFINE_ERROR

}  // namespace snnaccel
