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

#include "machedu/teaching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace machedu {

double complexity(ComplexityKind kind, std::span<const int> labels) {
  if (kind == ComplexityKind::kRecordCount) return static_cast<double>(labels.size());
  if (labels.empty()) return 0.0;
  std::map<int, std::size_t> counts;
  for (int y : labels) ++counts[y];
  double h = 0.0;
  const double n = static_cast<double>(labels.size());
  for (const auto& [label, count] : counts) {
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h;
}

const char* to_string(ComplexityKind k) {
  return k == ComplexityKind::kRecordCount ? "record-count" : "label-entropy";
}

ComplexityKind complexity_from_string(const std::string& s) {
  if (s == "record-count") return ComplexityKind::kRecordCount;
  if (s == "label-entropy") return ComplexityKind::kLabelEntropy;
  throw Error("unknown complexity metric: " + s);
}

const char* to_string(ErrKind k) { return k == ErrKind::kLoss ? "loss" : "disagreement"; }

ErrKind err_kind_from_string(const std::string& s) {
  if (s == "loss") return ErrKind::kLoss;
  if (s == "disagreement") return ErrKind::kDisagreement;
  throw Error("unknown teaching err: " + s);
}

void check_problem(const TeachingProblem& p) {
  if (p.pool.size() == 0) throw Error("teaching pool is empty");
  if (p.eval_inputs.rows() == 0) throw Error("teaching eval set is empty");
  if (!(p.lambda >= 0)) throw Error("lambda must be >= 0");
  check_config(p.student);
  if (p.pool.inputs.cols() != p.student.input_dim ||
      p.eval_inputs.cols() != p.student.input_dim ||
      p.target.config().input_dim != p.student.input_dim) {
    throw Error("teaching problem dimensions disagree");
  }
}

SubsetScore score_subset(const TeachingProblem& p, const std::vector<std::size_t>& subset) {
  Chunk taught;
  taught.concept_id = p.pool.concept_id;
  taught.seed = p.pool.seed;
  taught.inputs = Matrix(0, p.pool.inputs.cols());
  for (std::size_t i : subset) {
    taught.inputs.append_row(p.pool.inputs.row(i));
    taught.labels.push_back(p.pool.labels[i]);
  }

  NeuralModule student = init_module(p.student, p.pool.concept_id);
  TrainOptions opts = p.student_training;
  opts.require_matching_concept = false;
  train_module(student, taught, opts);

  Chunk reference;
  reference.concept_id = p.pool.concept_id;
  reference.inputs = p.eval_inputs;
  std::size_t disagree = 0;
  for (std::size_t r = 0; r < p.eval_inputs.rows(); ++r) {
    const auto x = p.eval_inputs.row(r);
    const int wanted = predict_class(p.target, x);
    reference.labels.push_back(wanted);
    if (predict_class(student, x) != wanted) ++disagree;
  }
  SubsetScore s;
  s.disagreement = static_cast<double>(disagree) / static_cast<double>(p.eval_inputs.rows());
  if (p.err_kind == ErrKind::kDisagreement) {
    s.err = s.disagreement;
  } else {
    const std::vector<double> targets = chunk_targets(reference);
    s.err = batch_loss(p.student, student.weights(), reference.inputs, targets, opts.loss);
    if (!std::isfinite(s.err)) throw Error("non-finite eval loss");
  }
  s.cmpx = complexity(p.metric, taught.labels);
  s.objective = s.err + p.lambda * s.cmpx;
  return s;
}

namespace {

SubsetScore score_or_report(const TeachingProblem& p, const std::vector<std::size_t>& subset,
                            std::size_t candidate) {
  try {
    return score_subset(p, subset);
  } catch (const Error& e) {
    throw Error("retraining failed for candidate " + std::to_string(candidate) + ": " + e.what());
  }
}

void fill(TeachingResult& r, std::vector<std::size_t> subset, const SubsetScore& s) {
  std::sort(subset.begin(), subset.end());
  r.selected = std::move(subset);
  r.err = s.err;
  r.disagreement = s.disagreement;
  r.cmpx = s.cmpx;
  r.objective = s.objective;
}

}  // namespace

TeachingResult emt_greedy(const TeachingProblem& p) {
  check_problem(p);
  TeachingResult result;
  std::vector<std::size_t> current;
  std::vector<bool> used(p.pool.size(), false);
  SubsetScore current_score;

  for (;;) {
    std::optional<std::size_t> best;
    SubsetScore best_score;
    for (std::size_t i = 0; i < p.pool.size(); ++i) {
      if (used[i]) continue;
      std::vector<std::size_t> trial = current;
      trial.push_back(i);
      SubsetScore s = score_or_report(p, trial, i);
      ++result.evaluations;
      if (!best || s.objective < best_score.objective) {
        best = i;
        best_score = s;
      }
    }
    if (!best) break;
    if (!current.empty() && !(best_score.objective < current_score.objective)) break;
    current.push_back(*best);
    used[*best] = true;
    current_score = best_score;
    result.trace.push_back(best_score.objective);
  }
  fill(result, current, current_score);
  return result;
}

TeachingResult emt_exhaustive(const TeachingProblem& p) {
  check_problem(p);
  const std::size_t n = p.pool.size();
  if (n > kMaxExhaustivePool) {
    throw Error("pool of " + std::to_string(n) + " exceeds exhaustive limit " +
                std::to_string(kMaxExhaustivePool));
  }
  TeachingResult result;
  std::vector<std::size_t> best;
  SubsetScore best_score;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(i);
    }
    SubsetScore s = score_or_report(p, subset, subset.back());
    ++result.evaluations;
    const bool better =
        best.empty() || s.objective < best_score.objective ||
        (s.objective == best_score.objective &&
         (subset.size() < best.size() || (subset.size() == best.size() && subset < best)));
    if (better) {
      best = subset;
      best_score = s;
    }
  }
  fill(result, best, best_score);
  result.trace.push_back(best_score.objective);
  return result;
}

std::vector<double> weight_angles(std::span<const double> w, std::size_t n) {
  if (n < 2 || w.size() < n) throw Error("weight_angles needs n >= 2 weights");
  const auto v = w.first(n);
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    throw Error("weight_angles of a zero vector");
  }
  std::vector<double> angles(n - 1);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    double tail = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) tail += v[j] * v[j];
    angles[i] = std::atan2(std::sqrt(tail), v[i]);
  }
  angles[n - 2] = std::atan2(v[n - 1], v[n - 2]);
  return angles;
}

double angular_distance(std::span<const double> a, std::span<const double> b, std::size_t n) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error("angular_distance of a zero vector");
  return std::acos(std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0));
}

IemtResult iemt_run(const std::vector<Chunk>& chunks, const NetworkConfig& student,
                    bool warm_start, const TrainOptions& training, const std::optional<Chunk>& eval) {
  if (chunks.empty()) throw Error("iemt_run needs at least one chunk");
  for (const auto& c : chunks) {
    if (c.inputs.cols() != student.input_dim) {
      throw Error("chunk " + c.concept_id + " has dimension " + std::to_string(c.inputs.cols()) +
                  ", student expects " + std::to_string(student.input_dim));
    }
  }
  Chunk eval_set = eval ? *eval : chunks.front();
  if (!eval) {
    for (std::size_t i = 1; i < chunks.size(); ++i) eval_set = concatenate(eval_set, chunks[i]);
  }
  const bool linear = student.hidden_layers.empty() && student.output_dim == 1;

  TrainOptions opts = training;
  opts.require_matching_concept = false;

  IemtResult result;
  NeuralModule module = init_module(student, chunks.front().concept_id);
  Chunk cumulative;
  for (std::size_t t = 0; t < chunks.size(); ++t) {
    const Chunk& chunk = chunks[t];
    result.delivered.push_back(chunk.concept_id);
    cumulative = t == 0 ? chunk : concatenate(cumulative, chunk);
    if (!warm_start) module = init_module(student, chunk.concept_id);
    train_module(module, cumulative, opts);

    IemtStep step;
    step.t = t + 1;
    step.concept_id = chunk.concept_id;
    step.weights.assign(module.weights().begin(), module.weights().end());
    if (linear && student.input_dim >= 2) step.angles = weight_angles(step.weights, student.input_dim);
    step.err = 1.0 - accuracy(module, eval_set);
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace machedu
