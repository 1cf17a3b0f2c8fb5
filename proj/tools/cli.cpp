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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <numbers>

#include "CLI11.hpp"
#include "machedu/config.hpp"
#include "machedu/ontology.hpp"
#include "machedu/pipeline.hpp"
#include "machedu/text_io.hpp"

namespace machedu::cli {

namespace {

struct Options {
  std::string config;
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  std::string mode = "coupled";
  bool plot = false;
};

// Loads and validates; prints diagnostics and returns nullopt on failure.
std::optional<LoadedCurriculum> load_valid(const std::string& path, std::ostream& err) {
  LoadedCurriculum loaded;
  try {
    loaded = load_curriculum(path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  Diagnostics d = validate_curriculum(loaded.curriculum);
  if (!d.ok()) {
    for (const auto& m : d.messages) err << "error: " << m << "\n";
    return std::nullopt;
  }
  return loaded;
}

RunConfig run_config(const Options& o) {
  RunConfig r;
  r.curriculum_path = o.config;
  r.out_dir = o.out_dir;
  r.master_seed = o.seed;
  r.mode = o.mode == "abstract" ? RunMode::kAbstract : RunMode::kCoupled;
  r.plot = o.plot;
  return r;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  auto loaded = load_valid(o.config, err);
  if (!loaded) return kExitInvalidConfig;
  const Curriculum& c = loaded->curriculum;
  out << "ok: " << c.ontology.concepts.size() << " concepts, " << c.syllabus.lessons.size()
      << " lessons, root " << c.ontology.root << "\n";
  return kExitOk;
}

int cmd_plan(const Options& o, std::ostream& out, std::ostream& err) {
  auto loaded = load_valid(o.config, err);
  if (!loaded) return kExitInvalidConfig;
  for (const auto& id : loaded->curriculum.syllabus.lesson_plan) out << id << "\n";
  return kExitOk;
}

int cmd_teach(const Options& o, std::ostream& out, std::ostream& err) {
  auto loaded = load_valid(o.config, err);
  if (!loaded) return kExitInvalidConfig;
  TeachOutcome result = run_teach(*loaded, run_config(o));
  out << "status: " << result.artifacts.status << "\n";
  out << "report: " << (std::filesystem::path(o.out_dir) / "report.json").string() << "\n";
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  auto loaded = load_valid(o.config, err);
  if (!loaded) return kExitInvalidConfig;
  auto trajectory = run_simulate(*loaded, run_config(o));
  const auto& last = trajectory.back();
  out << "steps: " << trajectory.size() - 1 << ", t = " << format_double(last.t)
      << ", pool = " << format_double(last.pool) << "\n";
  return kExitOk;
}

int cmd_emt(const Options& o, std::ostream& out, std::ostream& err) {
  auto loaded = load_valid(o.config, err);
  if (!loaded) return kExitInvalidConfig;
  EmtOutcome r = run_emt(*loaded, run_config(o));
  auto show = [&](const char* name, const TeachingResult& t) {
    out << name << ": " << t.selected.size() << " records, err " << format_double(t.err)
        << ", objective " << format_double(t.objective) << "\n";
  };
  show("greedy", r.greedy);
  if (r.exhaustive) show("exhaustive", *r.exhaustive);
  if (!r.angular_distance.empty()) {
    out << "iemt: final angular distance "
        << format_double(r.angular_distance.back() * 180.0 / std::numbers::pi) << " deg\n";
  }
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curriculum-driven machine teaching with modular networks", "machedu"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool runs) {
    sub->add_option("config", o.config, "Curriculum JSON file")->required();
    if (runs) {
      sub->add_option("--seed", o.seed, "Master seed");
      sub->add_option("--out-dir", o.out_dir, "Directory for all outputs");
      sub->add_flag("--plot", o.plot, "Also write SVG plots");
    }
  };
  CLI::App* validate = app.add_subcommand("validate", "Check a curriculum and its ontology");
  add_common(validate, false);
  CLI::App* plan = app.add_subcommand("plan", "Print the lesson plan");
  add_common(plan, false);
  CLI::App* teach = app.add_subcommand("teach", "Run the coupled teaching loop");
  add_common(teach, true);
  teach->add_option("--mode", o.mode, "coupled or abstract")
      ->check(CLI::IsMember({"coupled", "abstract"}));
  CLI::App* simulate = app.add_subcommand("simulate", "Run the abstract stock-and-flow model");
  add_common(simulate, true);
  CLI::App* emt = app.add_subcommand("emt", "Teaching-set minimization for one concept");
  add_common(emt, true);
  CLI::App* report = app.add_subcommand("report", "Summarize a previous run");
  report->add_option("out_dir", o.out_dir, "Output directory of a run")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (plan->parsed()) return cmd_plan(o, out, err);
    if (teach->parsed()) return cmd_teach(o, out, err);
    if (simulate->parsed()) return cmd_simulate(o, out, err);
    if (emt->parsed()) return cmd_emt(o, out, err);
    if (report->parsed()) {
      out << summarize_run(o.out_dir);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeFailure;
  }
  return kExitInvalidConfig;
}

}  // namespace machedu::cli
