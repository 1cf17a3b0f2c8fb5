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

#include "machedu/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include "machedu/svg.hpp"
#include "machedu/text_io.hpp"

namespace machedu {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string csv_string(const std::vector<ControlStepRecord>& trajectory) {
  std::ostringstream s;
  write_trajectory_csv(s, trajectory);
  return s.str();
}

std::vector<double> level_targets(const SkillFlowModel& m) {
  std::vector<double> t;
  for (const auto& l : m.levels) t.push_back(l.target);
  return t;
}

std::vector<std::string> level_names(const SkillFlowModel& m) {
  std::vector<std::string> n;
  for (const auto& l : m.levels) n.push_back(l.name);
  return n;
}

const RegionSpec& region_for_concept(const Curriculum& c, const std::string& concept_id) {
  for (const auto& l : c.syllabus.lessons) {
    if (l.concept_id == concept_id) return c.regions.at(l.chunk_spec);
  }
  throw Error("no lesson teaches concept " + concept_id);
}

std::vector<ScatterPanel> boundary_panels(const LoadedCurriculum& loaded, const CoupledReport& r) {
  const Curriculum& c = loaded.curriculum;
  std::vector<ScatterPanel> panels;
  for (const auto& id : c.syllabus.lesson_plan) {
    const Lesson* lesson = c.syllabus.find_lesson(id);
    auto data = r.lesson_data.find(id);
    if (!lesson || data == r.lesson_data.end()) continue;
    const RegionSpec& region = c.regions.at(lesson->chunk_spec);
    panels.push_back({id + " (" + lesson->concept_id + ")", data->second, region.halfspaces,
                      region.domain_box});
  }
  return panels;
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

TeachOutcome run_teach(const LoadedCurriculum& loaded, const RunConfig& run) {
  const Curriculum& c = loaded.curriculum;
  if (Diagnostics d = validate_curriculum(c); !d.ok()) {
    throw Error("invalid curriculum: " + d.messages.front());
  }
  fs::create_directories(run.out_dir);

  TeachOutcome outcome;
  RunArtifacts& a = outcome.artifacts;
  a.curriculum_digest = loaded.digest;
  a.master_seed = run.master_seed;
  a.lesson_plan = c.syllabus.lesson_plan;
  a.trajectory_file = "trajectory.csv";
  a.timestamp = run.timestamp.empty() ? utc_timestamp() : run.timestamp;

  SkillFlowModel model = make_flow_model(loaded);

  if (run.mode == RunMode::kAbstract) {
    auto trajectory = run_simulation(model, loaded.controller.horizon);
    write_file(run.out_dir / "trajectory.csv", csv_string(trajectory));
    if (run.plot) {
      write_file(run.out_dir / "trajectory.svg",
                 trajectory_svg(trajectory, level_names(model), level_targets(model)));
    }
    a.status = "simulated";
    a.mode = "abstract";
    a.teaching["steps"] = trajectory.size() - 1;
    a.teaching["final_pool"] = trajectory.back().pool;
    a.teaching["final_stocks"] = trajectory.back().stocks;
    outcome.report = emit_report(a);
    write_file(run.out_dir / "report.json", outcome.report.dump(2) + "\n");
    return outcome;
  }

  SeedLedger seeds(run.master_seed);
  CoupledSettings settings;
  settings.burst_epochs = loaded.controller.burst_epochs;
  settings.max_ticks = loaded.controller.max_ticks;
  outcome.coupled = run_coupled_teaching(c, model, seeds, settings);
  const CoupledReport& r = outcome.coupled;

  a.status = r.status;
  a.mode = "coupled";
  for (const auto& l : r.lessons) a.formative.push_back(l.formative);
  a.summative = r.summative;
  a.failing_lessons = r.unmet_lessons;
  a.delivered = r.delivered;
  a.coverage = r.coverage;
  a.leaves_unchanged = r.leaves_unchanged;
  a.seeds = seeds.entries();

  nlohmann::ordered_json lessons = nlohmann::ordered_json::array();
  for (const auto& l : r.lessons) {
    nlohmann::ordered_json j;
    j["lesson_id"] = l.lesson_id;
    j["concept_id"] = l.concept_id;
    j["chunks_delivered"] = l.chunks_delivered;
    j["epochs_trained"] = l.epochs_trained;
    j["goal_met"] = l.goal_met;
    lessons.push_back(std::move(j));
  }
  a.teaching["ticks"] = r.trajectory.size();
  a.teaching["lessons_drawn"] = r.total_drawn;
  a.teaching["final_pool"] = r.trajectory.empty() ? model.lesson_pool : r.trajectory.back().pool;
  a.teaching["gain"] = loaded.controller.gain;
  a.teaching["dt"] = loaded.controller.dt;
  a.teaching["burst_epochs"] = loaded.controller.burst_epochs;
  a.teaching["lessons"] = std::move(lessons);

  write_file(run.out_dir / "trajectory.csv", csv_string(r.trajectory));
  if (r.network) write_file(run.out_dir / "network.json", network_to_json(*r.network) + "\n");
  if (run.plot) {
    write_file(run.out_dir / "boundaries.svg", decision_regions_svg(boundary_panels(loaded, r)));
    write_file(run.out_dir / "trajectory.svg",
               trajectory_svg(r.trajectory, level_names(model), level_targets(model)));
  }
  outcome.report = emit_report(a);
  write_file(run.out_dir / "report.json", outcome.report.dump(2) + "\n");
  return outcome;
}

std::vector<ControlStepRecord> run_simulate(const LoadedCurriculum& loaded, const RunConfig& run) {
  SkillFlowModel model = make_flow_model(loaded);
  auto trajectory = run_simulation(model, loaded.controller.horizon);
  fs::create_directories(run.out_dir);
  write_file(run.out_dir / "trajectory.csv", csv_string(trajectory));
  if (run.plot) {
    write_file(run.out_dir / "trajectory.svg",
               trajectory_svg(trajectory, level_names(model), level_targets(model)));
  }
  return trajectory;
}

nlohmann::ordered_json teaching_result_json(const TeachingResult& r) {
  nlohmann::ordered_json j;
  j["selected"] = r.selected;
  j["err"] = r.err;
  j["disagreement"] = r.disagreement;
  j["cmpx"] = r.cmpx;
  j["objective"] = r.objective;
  j["trace"] = r.trace;
  j["evaluations"] = r.evaluations;
  return j;
}

void write_iemt_csv(std::ostream& out, const IemtResult& result) {
  const std::size_t k = result.steps.empty() ? 0 : result.steps.front().angles.size();
  out << "t,err";
  for (std::size_t i = 0; i < k; ++i) out << ",theta_" << (i + 1);
  out << '\n';
  for (const auto& s : result.steps) {
    out << s.t << ',' << format_double(s.err);
    for (double a : s.angles) out << ',' << format_double(a);
    out << '\n';
  }
}

EmtOutcome run_emt(const LoadedCurriculum& loaded, const RunConfig& run) {
  const Curriculum& c = loaded.curriculum;
  const TeachingParams& tp = loaded.teaching;
  const RegionSpec& region = region_for_concept(c, tp.concept_id);
  SeedLedger seeds(run.master_seed);

  // The teacher's model: a leaf module trained on a generous sample.
  NetworkConfig target_cfg = c.student.leaf;
  target_cfg.init_seed = seeds.derive("emt/target-init", 0);
  NeuralModule target = init_module(target_cfg, tp.concept_id);
  Chunk target_data = generate_chunk(region, tp.concept_id, 400, seeds.derive("emt/target-data", 0));
  TrainOptions target_opts;
  target_opts.shuffle_seed = seeds.derive("emt/target-shuffle", 0);
  train_module(target, target_data, target_opts);

  Chunk pool = generate_chunk(region, tp.concept_id, tp.pool_size, seeds.derive("emt/pool", 0));
  for (std::size_t i = 0; i < pool.size(); ++i) pool.labels[i] = predict_class(target, pool.inputs.row(i));
  Chunk eval = generate_chunk(region, tp.concept_id, tp.eval_size, seeds.derive("emt/eval", 0));

  NetworkConfig student = tp.student;
  student.init_seed = seeds.derive("emt/student-init", 0);
  TrainOptions student_opts;
  student_opts.target_accuracy = 2.0;  // fixed budget: never stop early
  student_opts.shuffle_seed = seeds.derive("emt/student-shuffle", 0);

  EmtOutcome out{TeachingProblem{target, pool, eval.inputs, student, student_opts, tp.lambda, tp.metric,
                                 tp.err_kind},
                 {}, std::nullopt, {}, {}, {}, {}};
  out.greedy = emt_greedy(out.problem);
  if (pool.size() <= kMaxExhaustivePool) out.exhaustive = emt_exhaustive(out.problem);

  // Incremental delivery of a seeded stream, compared with batch training.
  std::vector<Chunk> stream;
  for (std::size_t t = 0; t < tp.stream_chunks; ++t) {
    stream.push_back(generate_chunk(region, tp.concept_id, tp.stream_chunk_size,
                                    seeds.derive("iemt/chunk", t)));
  }
  TrainOptions stream_opts;
  stream_opts.target_accuracy = 2.0;
  stream_opts.shuffle_seed = seeds.derive("iemt/shuffle", 0);
  out.iemt = iemt_run(stream, student, /*warm_start=*/true, stream_opts);

  Chunk all = stream.front();
  for (std::size_t t = 1; t < stream.size(); ++t) all = concatenate(all, stream[t]);
  NeuralModule batch = init_module(student, tp.concept_id);
  TrainOptions batch_opts = stream_opts;
  batch_opts.max_epochs = student.max_epochs * stream.size();
  train_module(batch, all, batch_opts);
  out.batch_weights.assign(batch.weights().begin(), batch.weights().end());

  const bool linear = student.hidden_layers.empty();
  if (linear) {
    for (const auto& s : out.iemt.steps) {
      out.angular_distance.push_back(angular_distance(s.weights, out.batch_weights, student.input_dim));
    }
  }

  nlohmann::ordered_json j;
  j["concept_id"] = tp.concept_id;
  j["lambda"] = tp.lambda;
  j["metric"] = to_string(tp.metric);
  j["err_kind"] = to_string(tp.err_kind);
  j["pool_size"] = pool.size();
  j["eval_size"] = eval.size();
  j["greedy"] = teaching_result_json(out.greedy);
  j["exhaustive"] = out.exhaustive ? teaching_result_json(*out.exhaustive) : nlohmann::ordered_json();
  if (out.exhaustive && out.greedy.objective > 0) {
    j["exhaustive_to_greedy_ratio"] = out.exhaustive->objective / out.greedy.objective;
  }
  nlohmann::ordered_json iemt;
  iemt["chunks"] = stream.size();
  iemt["chunk_size"] = tp.stream_chunk_size;
  iemt["delivered"] = out.iemt.delivered;
  nlohmann::ordered_json errs = nlohmann::ordered_json::array();
  for (const auto& s : out.iemt.steps) errs.push_back(s.err);
  iemt["err"] = std::move(errs);
  if (linear) {
    iemt["batch_angles"] = weight_angles(out.batch_weights, student.input_dim);
    nlohmann::ordered_json deg = nlohmann::ordered_json::array();
    for (double d : out.angular_distance) deg.push_back(d * 180.0 / std::numbers::pi);
    iemt["angular_distance_deg"] = std::move(deg);
  }
  j["iemt"] = std::move(iemt);
  j["seeds"] = seeds.entries();
  out.summary = std::move(j);

  fs::create_directories(run.out_dir);
  write_file(run.out_dir / "emt.json", out.summary.dump(2) + "\n");
  std::ostringstream csv;
  write_iemt_csv(csv, out.iemt);
  write_file(run.out_dir / "iemt.csv", csv.str());
  return out;
}

std::string summarize_run(const fs::path& out_dir) {
  const fs::path path = out_dir / "report.json";
  std::ifstream in(path);
  if (!in) throw Error("no report at " + path.string());
  nlohmann::json r;
  try {
    r = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("report.json is not valid JSON: " + std::string(e.what()));
  }

  std::ostringstream s;
  s << "status: " << r.value("status", "?") << " (" << r.value("mode", "?") << ")\n";
  s << "master seed: " << r.value("master_seed", std::uint64_t{0}) << "\n";
  s << "curriculum digest: " << r.value("curriculum_digest", "") << "\n";
  s << "lesson plan:";
  for (const auto& id : r.value("lesson_plan", nlohmann::json::array())) s << ' ' << id.get<std::string>();
  s << "\n";
  for (const auto& f : r.value("formative", nlohmann::json::array())) {
    s << "  formative " << f.value("subject", "") << ": accuracy " << f.value("accuracy", 0.0)
      << " (goal " << f.value("goal_threshold", 0.0) << ", chance " << f.value("chance_baseline", 0.0)
      << ") " << (f.value("passed", false) ? "PASS" : "FAIL") << "\n";
  }
  if (r.contains("summative") && !r["summative"].is_null()) {
    const auto& sa = r["summative"];
    s << "  summative " << sa.value("subject", "") << ": accuracy " << sa.value("accuracy", 0.0)
      << " (goal " << sa.value("goal_threshold", 0.0) << ", chance "
      << sa.value("chance_baseline", 0.0) << ") " << (sa.value("passed", false) ? "PASS" : "FAIL")
      << "\n";
  }
  if (r.contains("linked_coverage") && r["linked_coverage"].contains("linked")) {
    s << "linked coverage: " << (r["linked_coverage"]["linked"].get<bool>() ? "yes" : "no") << "\n";
  }
  if (r.contains("leaves_unchanged") && !r["leaves_unchanged"].is_null()) {
    s << "frozen leaves unchanged: " << (r["leaves_unchanged"].get<bool>() ? "yes" : "no") << "\n";
  }
  const auto failing = r.value("failing_lessons", nlohmann::json::array());
  if (!failing.empty()) {
    s << "failing lessons:";
    for (const auto& id : failing) s << ' ' << id.get<std::string>();
    s << "\n";
  }
  s << "seeds recorded: " << r.value("seeds", nlohmann::json::object()).size() << "\n";
  return s.str();
}

}  // namespace machedu
