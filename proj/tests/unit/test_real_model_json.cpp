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

#include <gtest/gtest.h>

#include <filesystem>

#include "snnaccel/errors.hpp"
#include "snnaccel/io/real_model_json.hpp"

using namespace snnaccel;

TEST(RealModelJson, ExactRoundTrip) {
  const auto net = random_real_network({}, 61);
  const auto text = io::real_network_to_json(net);
  EXPECT_EQ(io::real_network_from_json(text), net);
  const auto fused = fuse_network(net);
  EXPECT_EQ(io::real_network_from_json(io::real_network_to_json(fused)), fused);
}

TEST(RealModelJson, WithoutClassifier) {
  auto net = random_real_network({.groups = 2}, 62);
  net.fc.reset();
  EXPECT_EQ(io::real_network_from_json(io::real_network_to_json(net)), net);
}

TEST(RealModelJson, Malformed) {
  const auto good = io::real_network_to_json(random_real_network({}, 63));
  EXPECT_THROW(io::real_network_from_json(""), CorruptFile);
  EXPECT_THROW(io::real_network_from_json("{"), CorruptFile);
  EXPECT_THROW(io::real_network_from_json("[]"), CorruptFile);
  EXPECT_THROW(io::real_network_from_json(R"({"format":"other","version":1})"), CorruptFile);
  auto wrong_version = good;
  wrong_version.replace(wrong_version.find("\"version\": 1"), 12, "\"version\": 2");
  EXPECT_THROW(io::real_network_from_json(wrong_version), CorruptFile);
  auto bad_role = good;
  bad_role.replace(bad_role.find("\"encode\""), 8, "\"bogus\"");
  EXPECT_THROW(io::real_network_from_json(bad_role), CorruptFile);
  auto truncated = good.substr(0, good.size() / 2);
  EXPECT_THROW(io::real_network_from_json(truncated), CorruptFile);
}

TEST(RealModelJson, Files) {
  const auto path = (std::filesystem::path(testing::TempDir()) / "net.json").string();
  const auto net = random_real_network({}, 64);
  io::write_real_network(path, net);
  EXPECT_EQ(io::read_real_network(path), net);
  EXPECT_THROW(io::read_real_network(path + ".missing"), CorruptFile);
}
