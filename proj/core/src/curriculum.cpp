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

#include "machedu/curriculum.hpp"

#include <algorithm>
#include <set>

namespace machedu {

const Lesson* Syllabus::find_lesson(const std::string& id) const {
  auto it = std::find_if(lessons.begin(), lessons.end(), [&](const Lesson& l) { return l.id == id; });
  return it == lessons.end() ? nullptr : &*it;
}

std::vector<std::string> Syllabus::planned_concepts() const {
  std::vector<std::string> out;
  for (const auto& id : lesson_plan) {
    if (const Lesson* l = find_lesson(id)) out.push_back(l->concept_id);
  }
  return out;
}

const Skill* Curriculum::skill_for_concept(const std::string& concept_id) const {
  auto it = std::find_if(skills.begin(), skills.end(),
                         [&](const Skill& s) { return s.concept_id == concept_id; });
  return it == skills.end() ? nullptr : &*it;
}

const Goal* Curriculum::goal_for_skill(const std::string& skill_id) const {
  auto it = std::find_if(goals.begin(), goals.end(),
                         [&](const Goal& g) { return g.skill_id == skill_id; });
  return it == goals.end() ? nullptr : &*it;
}

double Curriculum::threshold_for_concept(const std::string& concept_id) const {
  const Skill* s = skill_for_concept(concept_id);
  const Goal* g = s ? goal_for_skill(s->id) : nullptr;
  if (!g) throw Error("no goal for concept " + concept_id);
  return g->threshold;
}

std::string skill_id_for(const std::string& concept_id) { return "skill-" + concept_id; }

SkillsAndGoals derive_skills_goals(const Intent& intent, const Task& task,
                                   const ConceptOntology& ontology, double default_threshold) {
  (void)intent;
  Diagnostics d = validate_ontology(ontology);
  if (!d.ok()) throw Error("invalid ontology: " + d.messages.front());
  if (task.evaluation_concept != ontology.root) {
    throw Error("task " + task.id + " is not evaluated on the ontology root");
  }
  if (!(default_threshold > 0 && default_threshold <= 1)) throw Error("threshold out of range");

  SkillsAndGoals out;
  for (const auto& id : semantic_order(ontology)) {
    const Concept* c = ontology.find(id);
    out.skills.push_back({skill_id_for(id), id, c->label});
    out.goals.push_back({skill_id_for(id), GoalMetric::kAccuracy, default_threshold});
  }
  return out;
}

Syllabus build_syllabus(const std::vector<Skill>& skills, const std::vector<Goal>& goals,
                        const ConceptOntology& ontology, const std::vector<LessonSpec>& lesson_specs,
                        const Task& task, std::size_t summative_size) {
  auto threshold_of = [&](const std::string& skill_id) {
    auto it = std::find_if(goals.begin(), goals.end(),
                           [&](const Goal& g) { return g.skill_id == skill_id; });
    if (it == goals.end()) throw Error("no goal for skill " + skill_id);
    return it->threshold;
  };

  Syllabus y;
  for (const auto& concept_id : semantic_order(ontology)) {
    auto skill = std::find_if(skills.begin(), skills.end(),
                              [&](const Skill& s) { return s.concept_id == concept_id; });
    if (skill == skills.end()) continue;
    auto spec = std::find_if(lesson_specs.begin(), lesson_specs.end(),
                             [&](const LessonSpec& s) { return s.skill_id == skill->id; });
    if (spec == lesson_specs.end()) throw Error("missing lesson spec for skill " + skill->id);

    Lesson lesson;
    lesson.id = spec->lesson_id.empty() ? "lesson-" + concept_id : spec->lesson_id;
    lesson.concept_id = concept_id;
    lesson.chunk_spec = spec->chunk_spec.empty() ? concept_id : spec->chunk_spec;
    lesson.chunk_size = spec->chunk_size;
    lesson.holdout_size = spec->holdout_size;
    y.lesson_plan.push_back(lesson.id);
    y.formative.push_back({lesson.id, lesson.holdout_size, threshold_of(skill->id)});
    y.lessons.push_back(std::move(lesson));
  }
  for (const auto& s : skills) {
    if (!ontology.find(s.concept_id)) throw Error("skill " + s.id + " has unknown concept");
  }

  auto root_skill = std::find_if(skills.begin(), skills.end(),
                                 [&](const Skill& s) { return s.concept_id == ontology.root; });
  if (root_skill == skills.end()) throw Error("no skill realizes the root concept");
  y.summative = {task.id, ontology.root, summative_size, threshold_of(root_skill->id)};
  return y;
}

namespace {

void check_plan_order(const Curriculum& c, Diagnostics& d) {
  const auto planned = c.syllabus.planned_concepts();
  std::set<std::string> seen;
  for (const auto& concept_id : planned) {
    for (const auto& p : c.ontology.prerequisites(concept_id)) {
      if (!seen.contains(p)) {
        d.add("semantic order violated at " + concept_id);
        return;
      }
    }
    seen.insert(concept_id);
  }

  const std::set<std::string> lesson_concepts(planned.begin(), planned.end());
  std::vector<std::string> canonical;
  for (const auto& id : semantic_order(c.ontology)) {
    if (lesson_concepts.contains(id)) canonical.push_back(id);
  }
  for (std::size_t i = 0; i < planned.size() && i < canonical.size(); ++i) {
    if (planned[i] != canonical[i]) {
      d.add("lesson plan deviates from semantic order at " + planned[i]);
      return;
    }
  }
}

}  // namespace

Diagnostics validate_curriculum(const Curriculum& c) {
  Diagnostics d = validate_ontology(c.ontology);
  const bool ontology_ok = d.ok();

  if (c.intent.statement.empty()) d.add("intent statement is empty");
  if (c.task.evaluation_concept != c.ontology.root) {
    d.add("task " + c.task.id + " is not evaluated on the ontology root");
  }

  std::map<std::string, int> skills_per_concept;
  std::set<std::string> skill_ids;
  for (const auto& s : c.skills) {
    if (!skill_ids.insert(s.id).second) d.add("duplicate skill id: " + s.id);
    if (!c.ontology.find(s.concept_id)) {
      d.add("skill " + s.id + " references unknown concept " + s.concept_id);
    }
    ++skills_per_concept[s.concept_id];
  }
  for (const auto& node : c.ontology.concepts) {
    const int n = skills_per_concept[node.id];
    if (n == 0) d.add("concept " + node.id + " has no skill");
    if (n > 1) d.add("concept " + node.id + " has more than one skill");
  }

  std::map<std::string, int> goals_per_skill;
  for (const auto& g : c.goals) {
    if (!skill_ids.contains(g.skill_id)) d.add("goal references unknown skill " + g.skill_id);
    ++goals_per_skill[g.skill_id];
    if (!(g.threshold > 0 && g.threshold <= 1)) {
      d.add("threshold out of range for " + g.skill_id);
    }
  }
  for (const auto& id : skill_ids) {
    if (goals_per_skill[id] != 1) d.add("skill " + id + " needs exactly one goal");
  }

  std::set<std::string> lesson_ids;
  for (const auto& l : c.syllabus.lessons) {
    if (!lesson_ids.insert(l.id).second) d.add("duplicate lesson id: " + l.id);
    if (!c.ontology.find(l.concept_id)) {
      d.add("lesson " + l.id + " references unknown concept " + l.concept_id);
    }
    if (l.chunk_size < 1 || l.holdout_size < 1) d.add("lesson " + l.id + " has a zero size");
    auto region = c.regions.find(l.chunk_spec);
    if (region == c.regions.end()) {
      d.add("lesson " + l.id + " references unknown chunk spec " + l.chunk_spec);
    } else {
      try {
        check_region_spec(region->second);
      } catch (const Error& e) {
        d.add("chunk spec " + l.chunk_spec + ": " + e.what());
      }
    }
  }

  std::vector<std::string> plan = c.syllabus.lesson_plan;
  std::sort(plan.begin(), plan.end());
  if (plan != std::vector<std::string>(lesson_ids.begin(), lesson_ids.end()) ||
      plan.size() != c.syllabus.lessons.size()) {
    d.add("lesson plan is not a permutation of the lessons");
  } else if (ontology_ok) {
    check_plan_order(c, d);
    CoverageResult cov = linked_coverage(c.ontology, c.syllabus.planned_concepts());
    for (const auto& id : cov.missing) d.add("concept not covered by any lesson: " + id);
  }

  for (const auto& id : c.syllabus.lesson_plan) {
    auto f = std::find_if(c.syllabus.formative.begin(), c.syllabus.formative.end(),
                          [&](const FormativeSpec& s) { return s.lesson_id == id; });
    if (f == c.syllabus.formative.end()) d.add("lesson " + id + " has no formative assessment");
  }
  if (c.syllabus.summative.task_id != c.task.id) d.add("summative assessment is not on the task");
  if (c.syllabus.summative.test_size < 1) d.add("summative test set is empty");

  try {
    check_config(c.student.leaf);
    check_config(c.student.synthesis);
  } catch (const Error& e) {
    d.add(std::string("student config: ") + e.what());
  }
  if (ontology_ok && c.student.synthesis.input_dim != c.ontology.leaf_ids().size()) {
    d.add("synthesis input_dim does not match the leaf concept count");
  }
  return d;
}

}  // namespace machedu
