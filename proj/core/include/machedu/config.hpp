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

#ifndef MACHEDU_CONFIG_HPP_
#define MACHEDU_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "machedu/controller.hpp"
#include "machedu/curriculum.hpp"
#include "machedu/teaching.hpp"

namespace machedu {

struct ControllerParams {
  double gain = 0.5;
  double dt = 0.25;
  double lesson_pool = 40.0;
  double learner_speed = 1.0;
  double decay_rate = 0.0;
  double horizon = 100.0;  // abstract simulation only
  std::size_t burst_epochs = 100;
  std::size_t max_ticks = 1'000'000;
};

struct TeachingParams {
  double lambda = 0.01;
  ComplexityKind metric = ComplexityKind::kRecordCount;
  ErrKind err_kind = ErrKind::kLoss;
  std::string concept_id;  // defaults to the first leaf in semantic order
  std::size_t pool_size = 12;
  std::size_t eval_size = 400;
  std::size_t stream_chunks = 10;
  std::size_t stream_chunk_size = 20;
  NetworkConfig student;
};

struct LoadedCurriculum {
  Curriculum curriculum;
  ControllerParams controller;
  TeachingParams teaching;
  std::vector<std::string> feature_names;
  std::vector<Interval> domain_box;
  // FNV-1a of the normalized document.
  std::string digest;
};

// Throws Error with a description of the first schema problem. Structural
// curriculum checks are left to validate_curriculum.
LoadedCurriculum parse_curriculum(const nlohmann::json& document);
LoadedCurriculum load_curriculum(const std::filesystem::path& path);

NetworkConfig network_config_from_json(const nlohmann::json& j, const NetworkConfig& defaults);

// One level per planned lesson, targets from the goal thresholds.
SkillFlowModel make_flow_model(const LoadedCurriculum& loaded);

}  // namespace machedu

#endif  // MACHEDU_CONFIG_HPP_
