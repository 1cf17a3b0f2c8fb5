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

#ifndef MACHEDU_CURRICULUM_HPP_
#define MACHEDU_CURRICULUM_HPP_

#include <map>
#include <string>
#include <vector>

#include "machedu/datagen.hpp"
#include "machedu/learner.hpp"
#include "machedu/ontology.hpp"
#include "machedu/types.hpp"

namespace machedu {

struct Intent {
  std::string statement;
  std::string author;    // user whose intent is served
  std::string designer;  // curriculum designer
  std::string teacher;   // controller configuration used
};

struct Task {
  std::string id;
  std::string description;
  std::string evaluation_concept;  // must be the ontology root
};

struct Skill {
  std::string id;
  std::string concept_id;
  std::string description;
};

enum class GoalMetric { kAccuracy };

struct Goal {
  std::string skill_id;
  GoalMetric metric = GoalMetric::kAccuracy;
  double threshold = 0.95;
};

struct Lesson {
  std::string id;
  std::string concept_id;
  std::string chunk_spec;  // key into Curriculum::regions
  std::size_t chunk_size = 0;
  std::size_t holdout_size = 0;
};

// Held-out accuracy of the lesson's module.
struct FormativeSpec {
  std::string lesson_id;
  std::size_t holdout_size = 0;
  double threshold = 0.0;
};

// Accuracy of the composed network on a test set drawn for the root task.
struct SummativeSpec {
  std::string task_id;
  std::string concept_id;
  std::size_t test_size = 0;
  double threshold = 0.0;
};

struct Syllabus {
  std::vector<Lesson> lessons;
  std::vector<std::string> lesson_plan;
  std::vector<FormativeSpec> formative;
  SummativeSpec summative;

  const Lesson* find_lesson(const std::string& id) const;
  // Concept ids in lesson-plan order.
  std::vector<std::string> planned_concepts() const;
};

// The learner architecture: one config shared by the leaf modules and one for
// the synthesis head.
struct StudentConfig {
  NetworkConfig leaf;
  NetworkConfig synthesis;
};

struct Curriculum {
  Intent intent;
  StudentConfig student;
  Task task;
  std::vector<Skill> skills;
  std::vector<Goal> goals;
  Syllabus syllabus;
  ConceptOntology ontology;
  std::map<std::string, RegionSpec> regions;

  const Skill* skill_for_concept(const std::string& concept_id) const;
  const Goal* goal_for_skill(const std::string& skill_id) const;
  double threshold_for_concept(const std::string& concept_id) const;
};

struct SkillsAndGoals {
  std::vector<Skill> skills;
  std::vector<Goal> goals;
};

std::string skill_id_for(const std::string& concept_id);

// One skill per concept (in semantic order) and one accuracy goal per skill.
// Throws Error on an invalid ontology, or a task not evaluated on the root.
SkillsAndGoals derive_skills_goals(const Intent& intent, const Task& task,
                                   const ConceptOntology& ontology, double default_threshold);

struct LessonSpec {
  std::string skill_id;
  std::string lesson_id;   // defaults to "lesson-<concept>"
  std::string chunk_spec;  // defaults to the concept id
  std::size_t chunk_size = 200;
  std::size_t holdout_size = 1000;
};

// Lessons follow the semantic order. Throws Error naming the skill when a
// lesson spec is missing.
Syllabus build_syllabus(const std::vector<Skill>& skills, const std::vector<Goal>& goals,
                        const ConceptOntology& ontology, const std::vector<LessonSpec>& lesson_specs,
                        const Task& task, std::size_t summative_size = 2000);

Diagnostics validate_curriculum(const Curriculum& curriculum);

}  // namespace machedu

#endif  // MACHEDU_CURRICULUM_HPP_
