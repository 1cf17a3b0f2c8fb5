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

#ifndef MACHEDU_TEACHING_HPP_
#define MACHEDU_TEACHING_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "machedu/datagen.hpp"
#include "machedu/learner.hpp"

namespace machedu {

enum class ComplexityKind { kRecordCount, kLabelEntropy };

// record-count: number of rows. label-entropy: Shannon entropy in bits of the
// empirical label distribution.
double complexity(ComplexityKind kind, std::span<const int> labels);

const char* to_string(ComplexityKind k);
ComplexityKind complexity_from_string(const std::string& s);

// How the retrained student is scored against the target on the eval inputs.
// kLoss: mean training loss with the target's predicted classes as labels.
// kDisagreement: fraction of eval inputs where the predicted classes differ.
enum class ErrKind { kLoss, kDisagreement };

const char* to_string(ErrKind k);
ErrKind err_kind_from_string(const std::string& s);

// Find a small subset of `pool` that teaches a freshly initialized student
// to agree with `target`. The candidate pool labels are the teacher's labels.
struct TeachingProblem {
  NeuralModule target;
  Chunk pool;
  Matrix eval_inputs;
  NetworkConfig student;
  TrainOptions student_training;
  double lambda = 0.01;
  ComplexityKind metric = ComplexityKind::kRecordCount;
  ErrKind err_kind = ErrKind::kLoss;
};

void check_problem(const TeachingProblem& problem);

struct SubsetScore {
  double err = 0.0;
  double disagreement = 0.0;
  double cmpx = 0.0;
  double objective = 0.0;
};

// Retrains the student from its fixed initialization on the pool rows in
// `subset` and scores it.
SubsetScore score_subset(const TeachingProblem& problem, const std::vector<std::size_t>& subset);

struct TeachingResult {
  std::vector<std::size_t> selected;  // ascending pool indices
  double err = 0.0;
  double disagreement = 0.0;
  double cmpx = 0.0;
  double objective = 0.0;
  std::vector<double> trace;  // objective after each accepted addition
  std::size_t evaluations = 0;
};

// Forward selection from the empty set. The first pick is always accepted
// (a teaching set has at least one element); afterwards a candidate is added
// only when it strictly lowers the objective. Ties go to the lowest index.
TeachingResult emt_greedy(const TeachingProblem& problem);

inline constexpr std::size_t kMaxExhaustivePool = 12;

// Every nonempty subset; ties broken by cardinality, then index order.
TeachingResult emt_exhaustive(const TeachingProblem& problem);

// Hyperspherical angles (n-1 of them) of the direction of w[0..n).
std::vector<double> weight_angles(std::span<const double> w, std::size_t n);

// Angle in radians between the directions of a[0..n) and b[0..n).
double angular_distance(std::span<const double> a, std::span<const double> b, std::size_t n);

struct IemtStep {
  std::size_t t = 0;  // 1-based chunk index
  std::string concept_id;
  std::vector<double> weights;
  std::vector<double> angles;  // empty unless the student is linear
  double err = 0.0;            // misclassification rate on the eval set
};

struct IemtResult {
  std::vector<IemtStep> steps;
  std::vector<std::string> delivered;  // concept tag of every delivered chunk
};

// Teaches chunks in order. After each delivery the student trains on the
// cumulative union, continuing from its previous weights when warm_start is
// set and from a fresh initialization otherwise. `eval` defaults to the union of all chunks.
IemtResult iemt_run(const std::vector<Chunk>& chunks, const NetworkConfig& student,
                    bool warm_start, const TrainOptions& training,
                    const std::optional<Chunk>& eval = std::nullopt);

}  // namespace machedu

#endif  // MACHEDU_TEACHING_HPP_
