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

#ifndef MACHEDU_ASSESSMENT_HPP_
#define MACHEDU_ASSESSMENT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "machedu/datagen.hpp"
#include "machedu/learner.hpp"
#include "machedu/ontology.hpp"

namespace machedu {

enum class AssessmentKind { kFormative, kSummative };

struct AssessmentResult {
  std::string subject;  // lesson id (formative) or task id (summative)
  AssessmentKind kind = AssessmentKind::kFormative;
  double accuracy = 0.0;
  std::size_t sample_size = 0;
  double goal_threshold = 0.0;
  bool passed = false;
  // Accuracy of always predicting the most frequent label of the set.
  double chance_baseline = 0.0;
  // confusion[true][predicted]
  std::vector<std::vector<std::size_t>> confusion;
};

inline bool goal_passed(double accuracy, double threshold) { return accuracy >= threshold; }

using Predictor = std::function<int(std::span<const double>)>;

AssessmentResult assess(const Predictor& predict, const Chunk& data, std::size_t num_classes,
                        double threshold, std::string subject, AssessmentKind kind);

// Thresholded (sigmoid) or argmax (softmax) predictions on a held-out chunk.
AssessmentResult formative_assess(const NeuralModule& module, const Chunk& holdout,
                                  double threshold, std::string lesson_id);

AssessmentResult summative_assess(const ModularNetwork& network, const Chunk& test_set,
                                  double threshold, std::string task_id);

// Everything a run report is assembled from.
struct RunArtifacts {
  std::string status;  // "complete", "goal_unmet" or "simulated"
  std::string mode;    // "coupled" or "abstract"
  std::string curriculum_digest;
  std::uint64_t master_seed = 0;
  std::vector<std::string> lesson_plan;
  std::vector<AssessmentResult> formative;
  std::optional<AssessmentResult> summative;
  std::vector<std::string> failing_lessons;
  std::vector<std::string> delivered;
  std::optional<CoverageResult> coverage;
  std::optional<bool> leaves_unchanged;
  nlohmann::ordered_json teaching;  // controller summary
  nlohmann::ordered_json emt;       // null when not run
  nlohmann::ordered_json iemt;      // null when not run
  std::string trajectory_file;
  std::map<std::string, std::uint64_t> seeds;
  std::string timestamp;
};

inline constexpr const char* kTimestampField = "generated_at";

nlohmann::ordered_json assessment_json(const AssessmentResult& r);

// Field order is fixed. Every field except "generated_at" is a deterministic
// function of the artifacts.
nlohmann::ordered_json emit_report(const RunArtifacts& artifacts);

}  // namespace machedu

#endif  // MACHEDU_ASSESSMENT_HPP_
