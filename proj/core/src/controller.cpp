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

#include "machedu/controller.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "machedu/text_io.hpp"

namespace machedu {

void check_model(const SkillFlowModel& m) {
  if (m.levels.empty()) throw Error("skill flow model has no levels");
  if (!(m.dt > 0)) throw Error("dt must be > 0");
  if (m.lesson_pool < 0) throw Error("lesson pool must be >= 0");
  if (m.learner_speed < 0) throw Error("learner_speed must be >= 0");
  if (m.decay_rate < 0) throw Error("decay_rate must be >= 0");
  for (const auto& l : m.levels) {
    if (!(l.target > 0)) throw Error("level targets must be > 0");
    if (l.stock < 0) throw Error("level stocks must be >= 0");
    if (l.gain < 0) throw Error("level gains must be >= 0");
  }
}

std::optional<std::size_t> active_level(const SkillFlowModel& m) {
  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    if (m.levels[i].stock < m.levels[i].target) return i;
  }
  return std::nullopt;
}

ControlStepRecord step_stocks(SkillFlowModel& m, double t) {
  ControlStepRecord rec;
  rec.active_level = active_level(m);
  if (rec.active_level) {
    const SkillLevel& a = m.levels[*rec.active_level];
    rec.gap = a.target - a.stock;
    rec.draw_rate = std::max(0.0, std::min(a.gain * rec.gap, m.lesson_pool / m.dt));
  }
  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    auto& level = m.levels[i];
    const double inflow = rec.active_level == i ? m.learner_speed * rec.draw_rate : 0.0;
    level.stock = std::max(0.0, euler_update(level.stock, inflow, m.decay_rate * level.stock, m.dt));
  }
  m.lesson_pool = std::max(0.0, m.lesson_pool - rec.draw_rate * m.dt);

  rec.t = t + m.dt;
  rec.pool = m.lesson_pool;
  for (const auto& l : m.levels) rec.stocks.push_back(l.stock);
  return rec;
}

std::vector<ControlStepRecord> run_simulation(SkillFlowModel model, double horizon) {
  check_model(model);
  if (!(horizon > 0)) throw Error("horizon must be > 0");
  std::vector<ControlStepRecord> out;
  ControlStepRecord first;
  first.pool = model.lesson_pool;
  first.active_level = active_level(model);
  if (first.active_level) {
    first.gap = model.levels[*first.active_level].target - model.levels[*first.active_level].stock;
  }
  for (const auto& l : model.levels) first.stocks.push_back(l.stock);
  out.push_back(first);

  // Time is k * dt rather than a running sum so long runs do not drift.
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / model.dt - 1e-9));
  for (std::size_t k = 0; k < steps && active_level(model); ++k) {
    out.push_back(step_stocks(model, static_cast<double>(k) * model.dt));
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<ControlStepRecord>& trajectory) {
  const std::size_t k = trajectory.empty() ? 0 : trajectory.front().stocks.size();
  out << "t,pool,draw_rate,active_level";
  for (std::size_t i = 0; i < k; ++i) out << ",skill_" << (i + 1);
  out << '\n';
  for (const auto& r : trajectory) {
    out << format_double(r.t) << ',' << format_double(r.pool) << ',' << format_double(r.draw_rate)
        << ',' << (r.active_level ? *r.active_level + 1 : 0);
    for (double s : r.stocks) out << ',' << format_double(s);
    out << '\n';
  }
}

}  // namespace machedu
