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

#include "machedu/config.hpp"

#include <fstream>
#include <sstream>

#include "machedu/text_io.hpp"

namespace machedu {

namespace {

using nlohmann::json;

ConceptKind kind_from_string(const std::string& s) {
  if (s == "leaf") return ConceptKind::kLeaf;
  if (s == "synthesis") return ConceptKind::kSynthesis;
  throw Error("unknown concept kind: " + s);
}

LabelMode label_mode_from_string(const std::string& s) {
  if (s == "single-halfspace-binary") return LabelMode::kSingleHalfspaceBinary;
  if (s == "joint-region-class") return LabelMode::kJointRegionClass;
  throw Error("unknown label_mode: " + s);
}

NetworkConfig default_leaf() {
  NetworkConfig c;
  c.input_dim = 2;
  c.hidden_layers = {4};
  c.output_dim = 1;
  c.activation = Activation::kTanh;
  c.output_head = OutputHead::kSigmoidBinary;
  return c;
}

NetworkConfig default_synthesis() {
  NetworkConfig c;
  c.input_dim = 2;
  c.hidden_layers = {8};
  c.output_dim = 4;
  c.activation = Activation::kTanh;
  c.output_head = OutputHead::kSoftmaxMulticlass;
  return c;
}

NetworkConfig default_teaching_student() {
  NetworkConfig c;
  c.hidden_layers = {};
  c.output_dim = 1;
  c.output_head = OutputHead::kSigmoidBinary;
  c.learning_rate = 0.5;
  c.max_epochs = 200;
  c.batch_size = 16;
  return c;
}

ConceptOntology parse_ontology(const json& j) {
  ConceptOntology o;
  o.root = j.at("root").get<std::string>();
  for (const auto& n : j.at("nodes")) {
    o.concepts.push_back({n.at("id").get<std::string>(), n.value("label", std::string()),
                          kind_from_string(n.value("kind", std::string("leaf")))});
  }
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2) throw Error("ontology edges are [prerequisite, dependent]");
    o.edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
  }
  return o;
}

RegionSpec parse_region(const json& j, const std::vector<Interval>& box) {
  RegionSpec r;
  r.domain_box = box;
  r.label_mode = label_mode_from_string(j.at("label_mode").get<std::string>());
  for (const auto& h : j.at("halfspaces")) {
    r.halfspaces.push_back(
        {h.at("coefficients").get<std::vector<double>>(), h.at("offset").get<double>()});
  }
  return r;
}

LoadedCurriculum parse_impl(const json& doc) {
  LoadedCurriculum out;
  Curriculum& c = out.curriculum;

  const json& intent = doc.at("intent");
  c.intent = {intent.at("statement").get<std::string>(), intent.value("author", std::string()),
              intent.value("designer", std::string()), intent.value("teacher", std::string())};

  c.ontology = parse_ontology(doc.at("ontology"));

  const json& task = doc.at("task");
  c.task = {task.at("id").get<std::string>(), task.value("description", std::string()),
            task.value("evaluation_concept", c.ontology.root)};

  const json& features = doc.at("features");
  out.feature_names = features.at("names").get<std::vector<std::string>>();
  for (const auto& iv : features.at("domain_box")) {
    out.domain_box.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
  }
  if (out.domain_box.size() != out.feature_names.size()) {
    throw Error("features.names and features.domain_box differ in length");
  }

  for (const auto& [concept_id, spec] : doc.at("concepts").items()) {
    c.regions.emplace(concept_id, parse_region(spec, out.domain_box));
  }

  const json& student = doc.value("student", json::object());
  c.student.leaf = network_config_from_json(student.value("leaf", json::object()), default_leaf());
  c.student.synthesis =
      network_config_from_json(student.value("synthesis", json::object()), default_synthesis());
  c.student.leaf.input_dim = out.domain_box.size();
  if (student.value("normalize_inputs", true)) {
    set_input_normalization(c.student.leaf, out.domain_box);
  }

  // Step 1: skills and goals from the ontology, then per-concept overrides.
  const json& goals = doc.value("goals", json::object());
  SkillsAndGoals sg = derive_skills_goals(c.intent, c.task, c.ontology,
                                          goals.value("default_threshold", 0.95));
  const json thresholds = goals.value("thresholds", json::object());
  for (const auto& [concept_id, threshold] : thresholds.items()) {
    auto it = std::find_if(sg.goals.begin(), sg.goals.end(), [&](const Goal& g) {
      return g.skill_id == skill_id_for(concept_id);
    });
    if (it == sg.goals.end()) throw Error("goal threshold for unknown concept " + concept_id);
    it->threshold = threshold.get<double>();
  }
  c.skills = std::move(sg.skills);
  c.goals = std::move(sg.goals);

  // Step 2: syllabus.
  std::vector<LessonSpec> specs;
  for (const auto& l : doc.at("lessons")) {
    LessonSpec s;
    const std::string concept_id = l.at("concept").get<std::string>();
    s.skill_id = skill_id_for(concept_id);
    s.lesson_id = l.value("id", std::string());
    s.chunk_spec = l.value("chunk_spec", concept_id);
    s.chunk_size = l.value("chunk_size", std::size_t{200});
    s.holdout_size = l.value("holdout_size", std::size_t{1000});
    specs.push_back(std::move(s));
  }
  c.syllabus = build_syllabus(c.skills, c.goals, c.ontology, specs, c.task,
                              task.value("test_size", std::size_t{2000}));
  if (doc.contains("lesson_plan")) {
    c.syllabus.lesson_plan = doc.at("lesson_plan").get<std::vector<std::string>>();
  }

  const json& ctl = doc.value("controller", json::object());
  ControllerParams& cp = out.controller;
  cp.gain = ctl.value("gain", cp.gain);
  cp.dt = ctl.value("dt", cp.dt);
  cp.lesson_pool = ctl.value("lesson_pool", cp.lesson_pool);
  cp.learner_speed = ctl.value("learner_speed", cp.learner_speed);
  cp.decay_rate = ctl.value("decay_rate", cp.decay_rate);
  cp.horizon = ctl.value("horizon", cp.horizon);
  cp.burst_epochs = ctl.value("burst_epochs", cp.burst_epochs);
  cp.max_ticks = ctl.value("max_ticks", cp.max_ticks);

  const json& teach = doc.value("teaching", json::object());
  TeachingParams& tp = out.teaching;
  tp.lambda = teach.value("lambda", tp.lambda);
  tp.metric = complexity_from_string(teach.value("metric", std::string("record-count")));
  tp.err_kind = err_kind_from_string(teach.value("err", std::string("loss")));
  tp.concept_id = teach.value("concept", std::string());
  if (tp.concept_id.empty()) {
    for (const auto& id : semantic_order(c.ontology)) {
      if (c.ontology.find(id)->kind == ConceptKind::kLeaf) {
        tp.concept_id = id;
        break;
      }
    }
  }
  tp.pool_size = teach.value("pool_size", tp.pool_size);
  tp.eval_size = teach.value("eval_size", tp.eval_size);
  tp.stream_chunks = teach.value("stream_chunks", tp.stream_chunks);
  tp.stream_chunk_size = teach.value("stream_chunk_size", tp.stream_chunk_size);
  tp.student = network_config_from_json(teach.value("student", json::object()),
                                        default_teaching_student());
  tp.student.input_dim = out.domain_box.size();
  if (teach.value("normalize_inputs", true)) set_input_normalization(tp.student, out.domain_box);

  out.digest = digest_hex(doc.dump());
  return out;
}

}  // namespace

NetworkConfig network_config_from_json(const json& j, const NetworkConfig& defaults) {
  NetworkConfig c = defaults;
  c.input_dim = j.value("input_dim", c.input_dim);
  c.hidden_layers = j.value("hidden_layers", c.hidden_layers);
  c.output_dim = j.value("output_dim", c.output_dim);
  if (j.contains("activation")) c.activation = activation_from_string(j.at("activation"));
  if (j.contains("output_head")) c.output_head = output_head_from_string(j.at("output_head"));
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.init_seed = j.value("init_seed", c.init_seed);
  c.init_range = j.value("init_range", c.init_range);
  return c;
}

LoadedCurriculum parse_curriculum(const json& document) {
  try {
    return parse_impl(document);
  } catch (const json::exception& e) {
    throw Error(std::string("curriculum schema: ") + e.what());
  }
}

LoadedCurriculum load_curriculum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open curriculum file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("curriculum file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_curriculum(doc);
}

SkillFlowModel make_flow_model(const LoadedCurriculum& loaded) {
  const Curriculum& c = loaded.curriculum;
  const ControllerParams& p = loaded.controller;
  SkillFlowModel m;
  m.lesson_pool = p.lesson_pool;
  m.learner_speed = p.learner_speed;
  m.decay_rate = p.decay_rate;
  m.dt = p.dt;
  for (const auto& id : c.syllabus.lesson_plan) {
    const Lesson* l = c.syllabus.find_lesson(id);
    SkillLevel level;
    level.name = id;
    level.gain = p.gain;
    level.target = l ? c.threshold_for_concept(l->concept_id) : 1.0;
    m.levels.push_back(level);
  }
  return m;
}

}  // namespace machedu
