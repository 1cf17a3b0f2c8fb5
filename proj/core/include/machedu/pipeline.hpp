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

#ifndef MACHEDU_PIPELINE_HPP_
#define MACHEDU_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "machedu/assessment.hpp"
#include "machedu/config.hpp"
#include "machedu/controller.hpp"
#include "machedu/teaching.hpp"

namespace machedu {

enum class RunMode { kCoupled, kAbstract };

struct RunConfig {
  std::filesystem::path curriculum_path;
  std::filesystem::path out_dir = "out";
  std::uint64_t master_seed = 42;
  RunMode mode = RunMode::kCoupled;
  bool plot = false;
  // Empty means the current UTC time.
  std::string timestamp;
};

struct TeachOutcome {
  CoupledReport coupled;
  RunArtifacts artifacts;
  nlohmann::ordered_json report;
};

// Full coupled run. Writes report.json, trajectory.csv, network.json and, with
// plot, boundaries.svg and trajectory.svg under out_dir. In abstract mode only
// the controller is simulated and the report has status "simulated".
TeachOutcome run_teach(const LoadedCurriculum& loaded, const RunConfig& run);

// Abstract stock-and-flow run; writes trajectory.csv (and trajectory.svg).
std::vector<ControlStepRecord> run_simulate(const LoadedCurriculum& loaded, const RunConfig& run);

struct EmtOutcome {
  TeachingProblem problem;
  TeachingResult greedy;
  std::optional<TeachingResult> exhaustive;
  IemtResult iemt;
  std::vector<double> batch_weights;     // theta* reference
  std::vector<double> angular_distance;  // per IEMT step, radians
  nlohmann::ordered_json summary;
};

// Teaching-set minimization for the configured concept plus an incremental
// run over a seeded chunk stream. Writes emt.json and iemt.csv.
EmtOutcome run_emt(const LoadedCurriculum& loaded, const RunConfig& run);

nlohmann::ordered_json teaching_result_json(const TeachingResult& r);

// t,err,theta_1,...
void write_iemt_csv(std::ostream& out, const IemtResult& result);

// Human-readable summary of out_dir/report.json.
std::string summarize_run(const std::filesystem::path& out_dir);

std::string utc_timestamp();

}  // namespace machedu

#endif  // MACHEDU_PIPELINE_HPP_
