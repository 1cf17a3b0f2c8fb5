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

#include "machedu/assessment.hpp"

#include <algorithm>

namespace machedu {

AssessmentResult assess(const Predictor& predict, const Chunk& data, std::size_t num_classes,
                        double threshold, std::string subject, AssessmentKind kind) {
  if (data.size() == 0) throw Error("cannot assess on an empty set");
  AssessmentResult r;
  r.subject = std::move(subject);
  r.kind = kind;
  r.sample_size = data.size();
  r.goal_threshold = threshold;
  r.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));

  std::size_t hits = 0;
  std::vector<std::size_t> per_class(num_classes, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int truth = data.labels[i];
    const int guess = predict(data.inputs.row(i));
    if (truth < 0 || static_cast<std::size_t>(truth) >= num_classes || guess < 0 ||
        static_cast<std::size_t>(guess) >= num_classes) {
      throw Error("label outside the assessed class range");
    }
    ++r.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(guess)];
    ++per_class[static_cast<std::size_t>(truth)];
    if (truth == guess) ++hits;
  }
  const double n = static_cast<double>(data.size());
  r.accuracy = static_cast<double>(hits) / n;
  r.chance_baseline = static_cast<double>(*std::max_element(per_class.begin(), per_class.end())) / n;
  r.passed = goal_passed(r.accuracy, threshold);
  return r;
}

AssessmentResult formative_assess(const NeuralModule& module, const Chunk& holdout,
                                  double threshold, std::string lesson_id) {
  const auto& c = module.config();
  const std::size_t classes = c.output_head == OutputHead::kSoftmaxMulticlass ? c.output_dim : 2;
  return assess([&](std::span<const double> x) { return predict_class(module, x); }, holdout,
                classes, threshold, std::move(lesson_id), AssessmentKind::kFormative);
}

AssessmentResult summative_assess(const ModularNetwork& network, const Chunk& test_set,
                                  double threshold, std::string task_id) {
  const auto& c = network.synthesis().config();
  const std::size_t classes = c.output_head == OutputHead::kSoftmaxMulticlass ? c.output_dim : 2;
  return assess([&](std::span<const double> x) { return network.predict_class(x); }, test_set,
                classes, threshold, std::move(task_id), AssessmentKind::kSummative);
}

nlohmann::ordered_json assessment_json(const AssessmentResult& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["kind"] = r.kind == AssessmentKind::kFormative ? "formative" : "summative";
  j["accuracy"] = r.accuracy;
  j["sample_size"] = r.sample_size;
  j["goal_threshold"] = r.goal_threshold;
  j["passed"] = r.passed;
  j["chance_baseline"] = r.chance_baseline;
  j["confusion"] = r.confusion;
  return j;
}

nlohmann::ordered_json emit_report(const RunArtifacts& a) {
  nlohmann::ordered_json j;
  j["status"] = a.status;
  j["mode"] = a.mode;
  j["curriculum_digest"] = a.curriculum_digest;
  j["master_seed"] = a.master_seed;
  j["lesson_plan"] = a.lesson_plan;

  auto formative = nlohmann::ordered_json::array();
  for (const auto& r : a.formative) formative.push_back(assessment_json(r));
  j["formative"] = std::move(formative);
  j["summative"] = a.summative ? assessment_json(*a.summative) : nlohmann::ordered_json();
  j["failing_lessons"] = a.failing_lessons;

  nlohmann::ordered_json coverage;
  if (a.coverage) {
    coverage["linked"] = a.coverage->linked;
    coverage["missing"] = a.coverage->missing;
    coverage["order_violations"] = a.coverage->order_violations;
  }
  coverage["delivered"] = a.delivered;
  j["linked_coverage"] = std::move(coverage);
  j["leaves_unchanged"] = a.leaves_unchanged ? nlohmann::ordered_json(*a.leaves_unchanged)
                                             : nlohmann::ordered_json();
  j["teaching"] = a.teaching;
  j["emt"] = a.emt;
  j["iemt"] = a.iemt;
  j["trajectory_file"] = a.trajectory_file;

  nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
  for (const auto& [name, seed] : a.seeds) seeds[name] = seed;
  j["seeds"] = std::move(seeds);
  j[kTimestampField] = a.timestamp;
  return j;
}

}  // namespace machedu
