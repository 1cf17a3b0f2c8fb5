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

#include <algorithm>
#include <cstring>

#include "machedu/controller.hpp"

namespace machedu {

namespace {

struct LessonState {
  const Lesson* lesson = nullptr;
  const RegionSpec* region = nullptr;
  bool synthesis = false;
  double threshold = 0.0;
  Chunk delivered;
  std::optional<Chunk> holdout;
  std::optional<NeuralModule> module;  // leaf lessons only
  std::optional<AssessmentResult> last;
  std::size_t chunks = 0;
  std::size_t epochs = 0;
};

bool same_bits(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::size_t class_count(const NetworkConfig& c) {
  return c.output_head == OutputHead::kSoftmaxMulticlass ? c.output_dim : 2;
}

}  // namespace

CoupledReport run_coupled_teaching(const Curriculum& c, SkillFlowModel model, SeedLedger& seeds,
                                   const CoupledSettings& settings) {
  if (Diagnostics d = validate_curriculum(c); !d.ok()) {
    throw Error("invalid curriculum: " + d.messages.front());
  }
  for (const auto& node : c.ontology.concepts) {
    if (node.kind == ConceptKind::kSynthesis && node.id != c.ontology.root) {
      throw Error("coupled teaching supports leaf concepts feeding a single root; " + node.id +
                  " is an intermediate synthesis concept");
    }
  }
  const auto& plan = c.syllabus.lesson_plan;
  if (model.levels.size() != plan.size()) {
    throw Error("controller has " + std::to_string(model.levels.size()) + " levels for " +
                std::to_string(plan.size()) + " lessons");
  }

  std::vector<LessonState> states;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    LessonState s;
    s.lesson = c.syllabus.find_lesson(plan[i]);
    s.region = &c.regions.at(s.lesson->chunk_spec);
    s.synthesis = c.ontology.find(s.lesson->concept_id)->kind == ConceptKind::kSynthesis;
    s.threshold = c.threshold_for_concept(s.lesson->concept_id);
    s.delivered.concept_id = s.lesson->concept_id;
    model.levels[i].name = s.lesson->id;
    model.levels[i].target = s.threshold;
    model.levels[i].stock = 0.0;
    states.push_back(std::move(s));
  }
  check_model(model);

  CoupledReport report;
  std::vector<std::vector<double>> frozen_weights;

  auto deliver = [&](std::size_t level) {
    LessonState& s = states[level];
    const Lesson& lesson = *s.lesson;

    if (s.synthesis && !report.network) {
      std::vector<NeuralModule> leaves;
      for (auto& other : states) {
        if (other.synthesis || !other.module) continue;
        other.module->freeze();
        leaves.push_back(*other.module);
        frozen_weights.emplace_back(other.module->weights().begin(), other.module->weights().end());
      }
      NetworkConfig synth = c.student.synthesis;
      synth.init_seed = seeds.derive("init/" + lesson.concept_id, 0);
      report.network = compose(std::move(leaves), c.ontology, synth);
    }
    if (!s.holdout) {
      s.holdout = generate_chunk(*s.region, lesson.concept_id, lesson.holdout_size,
                                 seeds.derive("holdout/" + lesson.id, 0));
    }

    const std::uint64_t chunk_seed = seeds.derive("chunk/" + lesson.id, s.chunks);
    Chunk chunk = generate_chunk(*s.region, lesson.concept_id, lesson.chunk_size, chunk_seed);
    s.delivered = s.chunks == 0 ? chunk : concatenate(s.delivered, chunk);
    report.delivered.push_back(lesson.concept_id);

    TrainOptions opts;
    opts.loss = Loss::kCrossEntropy;
    opts.target_accuracy = 1.0;
    opts.max_epochs = settings.burst_epochs;
    opts.shuffle_seed = seeds.derive("shuffle/" + lesson.id, s.chunks);
    ++s.chunks;

    if (s.synthesis) {
      s.epochs += train_synthesis(*report.network, s.delivered, opts).trace.size();
      const ModularNetwork& net = *report.network;
      s.last = assess([&](std::span<const double> x) { return net.predict_class(x); }, *s.holdout,
                      class_count(net.synthesis().config()), s.threshold, lesson.id,
                      AssessmentKind::kFormative);
      bool unchanged = true;
      for (std::size_t k = 0; k < net.leaves().size(); ++k) {
        unchanged = unchanged && same_bits(net.leaves()[k].weights(), frozen_weights[k]);
      }
      report.leaves_unchanged = report.leaves_unchanged.value_or(true) && unchanged;
    } else {
      if (!s.module) {
        NetworkConfig leaf = c.student.leaf;
        leaf.init_seed = seeds.derive("init/" + lesson.concept_id, 0);
        s.module = init_module(leaf, lesson.concept_id);
      }
      s.epochs += train_module(*s.module, s.delivered, opts).trace.size();
      s.last = formative_assess(*s.module, *s.holdout, s.threshold, lesson.id);
    }
    model.levels[level].stock = s.last->accuracy;
  };

  double units = 0.0;
  for (std::size_t tick = 0; tick < settings.max_ticks; ++tick) {
    const auto active = active_level(model);
    if (!active) break;

    ControlStepRecord rec;
    rec.active_level = active;
    const SkillLevel& a = model.levels[*active];
    rec.gap = a.target - a.stock;
    rec.draw_rate = std::max(0.0, std::min(a.gain * rec.gap, model.lesson_pool / model.dt));
    const double drawn = rec.draw_rate * model.dt;
    model.lesson_pool = std::max(0.0, model.lesson_pool - drawn);
    if (model.lesson_pool < 1e-12) model.lesson_pool = 0.0;
    report.total_drawn += drawn;
    units += drawn;

    // One whole lesson unit buys one chunk.
    if (units >= 1.0 - 1e-9) {
      units -= 1.0;
      deliver(*active);
    }

    rec.t = static_cast<double>(tick + 1) * model.dt;
    rec.pool = model.lesson_pool;
    for (const auto& l : model.levels) rec.stocks.push_back(l.stock);
    report.trajectory.push_back(std::move(rec));

    if (!active_level(model)) break;
    // Pool exhausted before every goal was met.
    if (model.lesson_pool == 0.0 && units < 1.0 - 1e-9) break;
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    const LessonState& s = states[i];
    LessonOutcome out;
    out.lesson_id = s.lesson->id;
    out.concept_id = s.lesson->concept_id;
    out.chunks_delivered = s.chunks;
    out.epochs_trained = s.epochs;
    out.goal_met = model.levels[i].stock >= model.levels[i].target;
    if (s.last) {
      out.formative = *s.last;
    } else {
      out.formative.subject = s.lesson->id;
      out.formative.goal_threshold = s.threshold;
    }
    if (!out.goal_met) report.unmet_lessons.push_back(out.lesson_id);
    report.lessons.push_back(std::move(out));
    if (s.module) report.leaf_modules.emplace(s.lesson->concept_id, *s.module);
    if (s.chunks > 0) report.lesson_data.emplace(s.lesson->id, s.delivered);
  }
  report.status = report.unmet_lessons.empty() ? "complete" : "goal_unmet";

  if (report.network) {
    const LessonState& root =
        *std::find_if(states.begin(), states.end(), [](const LessonState& s) { return s.synthesis; });
    const SummativeSpec& sa = c.syllabus.summative;
    Chunk test = generate_chunk(*root.region, sa.concept_id, sa.test_size,
                                seeds.derive("summative/" + sa.task_id, 0));
    report.summative = summative_assess(*report.network, test, sa.threshold, sa.task_id);
  }
  report.coverage = linked_coverage(c.ontology, report.delivered);
  return report;
}

}  // namespace machedu
