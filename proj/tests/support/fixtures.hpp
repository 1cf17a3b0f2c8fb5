// Copyright 2026 The Authors.
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

#ifndef MACHEDU_TESTS_FIXTURES_HPP_
#define MACHEDU_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "machedu/datagen.hpp"
#include "machedu/ontology.hpp"

namespace machedu::testing {

inline std::filesystem::path config_dir() { return MACHEDU_CONFIG_DIR; }
inline std::filesystem::path data_dir() { return MACHEDU_TEST_DATA_DIR; }
inline std::filesystem::path swarm_config() { return config_dir() / "swarm.json"; }

inline ConceptOntology swarm_ontology() {
  ConceptOntology o;
  o.root = "swarm-root";
  o.concepts = {{"speed-leaf", "fast swarming", ConceptKind::kLeaf},
                {"distance-leaf", "slow swarming", ConceptKind::kLeaf},
                {"swarm-root", "swarming", ConceptKind::kSynthesis}};
  o.edges = {{"speed-leaf", "swarm-root"}, {"distance-leaf", "swarm-root"}};
  return o;
}

inline HalfspaceSpec slow_medium() { return {{3.0, 5.0}, 150.0}; }
inline HalfspaceSpec fast_long() { return {{5.0, 2.0}, 100.0}; }

inline std::vector<Interval> swarm_box() { return {{0.0, 60.0}, {0.0, 60.0}}; }

inline RegionSpec binary_region(const HalfspaceSpec& h) {
  return {{h}, swarm_box(), LabelMode::kSingleHalfspaceBinary};
}

inline RegionSpec joint_region() {
  return {{slow_medium(), fast_long()}, swarm_box(), LabelMode::kJointRegionClass};
}

inline nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A fresh directory under the build tree, emptied on construction.
inline std::filesystem::path scratch_dir(const std::string& name) {
  std::filesystem::path p = std::filesystem::path(MACHEDU_SCRATCH_DIR) / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace machedu::testing

#endif  // MACHEDU_TESTS_FIXTURES_HPP_
