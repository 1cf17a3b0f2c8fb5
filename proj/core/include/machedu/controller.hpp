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

#ifndef MACHEDU_CONTROLLER_HPP_
#define MACHEDU_CONTROLLER_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "machedu/assessment.hpp"
#include "machedu/curriculum.hpp"
#include "machedu/learner.hpp"
#include "machedu/seeds.hpp"

namespace machedu {

struct SkillLevel {
  std::string name;
  double stock = 0.0;
  double target = 1.0;
  double gain = 0.5;  // draw per unit gap per unit time
};

// Stock-and-flow model: a lesson pool drained into an ordered ladder of
// skill stocks. Only the lowest level below its target receives inflow.
struct SkillFlowModel {
  std::vector<SkillLevel> levels;
  double lesson_pool = 0.0;
  double learner_speed = 1.0;
  double decay_rate = 0.0;  // outflow fraction per unit time
  double dt = 0.25;
};

void check_model(const SkillFlowModel& model);

struct ControlStepRecord {
  double t = 0.0;
  double pool = 0.0;
  std::vector<double> stocks;
  std::optional<std::size_t> active_level;  // 0-based; none once all targets are met
  double draw_rate = 0.0;
  double gap = 0.0;
};

// stock + (inflow - outflow) * dt
inline double euler_update(double stock, double inflow, double outflow, double dt) {
  return stock + (inflow - outflow) * dt;
}

std::optional<std::size_t> active_level(const SkillFlowModel& model);

// One Euler step starting at time t. The record holds the state after the
// step (time t + dt) and the draw rate and gap used during it.
ControlStepRecord step_stocks(SkillFlowModel& model, double t);

// Initial record at t = 0, then steps until t reaches the horizon or every
// level meets its target.
std::vector<ControlStepRecord> run_simulation(SkillFlowModel model, double horizon);

// t,pool,draw_rate,active_level,skill_1,...,skill_k. active_level is 1-based,
// 0 when no level is active.
void write_trajectory_csv(std::ostream& out, const std::vector<ControlStepRecord>& trajectory);

struct CoupledSettings {
  std::size_t burst_epochs = 100;  // training epochs per delivered chunk
  std::size_t max_ticks = 1'000'000;
};

struct LessonOutcome {
  std::string lesson_id;
  std::string concept_id;
  std::size_t chunks_delivered = 0;
  std::size_t epochs_trained = 0;
  AssessmentResult formative;
  bool goal_met = false;
};

struct CoupledReport {
  std::string status;  // "complete" or "goal_unmet"
  std::vector<LessonOutcome> lessons;
  std::vector<std::string> unmet_lessons;
  std::optional<AssessmentResult> summative;
  std::vector<ControlStepRecord> trajectory;
  std::vector<std::string> delivered;  // concept of each chunk, in order
  CoverageResult coverage;
  std::optional<bool> leaves_unchanged;
  std::map<std::string, NeuralModule> leaf_modules;
  std::optional<ModularNetwork> network;
  // Held-out and delivered chunks, for plotting.
  std::map<std::string, Chunk> lesson_data;
  double total_drawn = 0.0;
};

// Level targets are set to the goal thresholds of the planned lessons and
// stocks start at 0. A level's stock is the module's latest formative
// accuracy. Each whole lesson unit drawn from the pool delivers one chunk of
// the active lesson followed by a training burst. Synthesis activation
// freezes the leaves and composes the modular network.
CoupledReport run_coupled_teaching(const Curriculum& curriculum, SkillFlowModel model,
                                   SeedLedger& seeds, const CoupledSettings& settings = {});

}  // namespace machedu

#endif  // MACHEDU_CONTROLLER_HPP_
