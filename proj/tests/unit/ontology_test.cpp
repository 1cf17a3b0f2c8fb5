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

#include "machedu/ontology.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace machedu {
namespace {

using testing::swarm_ontology;

ConceptOntology chain(std::vector<std::string> ids) {
  ConceptOntology o;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    o.concepts.push_back({ids[i], "", i == 0 ? ConceptKind::kLeaf : ConceptKind::kSynthesis});
    if (i > 0) o.edges.push_back({ids[i - 1], ids[i]});
  }
  o.root = ids.back();
  return o;
}

TEST(ValidateOntology, CaseStudyIsValid) {
  EXPECT_TRUE(validate_ontology(swarm_ontology()).ok());
}

TEST(ValidateOntology, SelfLoopIsACycle) {
  ConceptOntology o;
  o.root = "A";
  o.concepts = {{"A", "", ConceptKind::kSynthesis}};
  o.edges = {{"A", "A"}};
  Diagnostics d = validate_ontology(o);
  ASSERT_FALSE(d.ok());
  EXPECT_EQ(d.messages.front(), "cycle at A");
}

TEST(ValidateOntology, LongerCycleNamesSmallestMember) {
  ConceptOntology o = swarm_ontology();
  o.edges.push_back({"swarm-root", "speed-leaf"});
  Diagnostics d = validate_ontology(o);
  ASSERT_FALSE(d.ok());
  EXPECT_EQ(d.messages.front(), "cycle at speed-leaf");
}

TEST(ValidateOntology, DisconnectedConceptIsUnreachable) {
  ConceptOntology o = swarm_ontology();
  o.concepts.push_back({"D", "", ConceptKind::kLeaf});
  Diagnostics d = validate_ontology(o);
  ASSERT_FALSE(d.ok());
  EXPECT_EQ(d.messages, std::vector<std::string>{"unreachable: D"});
}

TEST(ValidateOntology, StructuralProblems) {
  ConceptOntology empty;
  EXPECT_FALSE(validate_ontology(empty).ok());

  ConceptOntology dup = swarm_ontology();
  dup.concepts.push_back({"speed-leaf", "", ConceptKind::kLeaf});
  EXPECT_FALSE(validate_ontology(dup).ok());

  ConceptOntology no_root = swarm_ontology();
  no_root.root = "missing";
  EXPECT_FALSE(validate_ontology(no_root).ok());

  ConceptOntology dangling = swarm_ontology();
  dangling.edges.push_back({"ghost", "swarm-root"});
  EXPECT_FALSE(validate_ontology(dangling).ok());

  ConceptOntology leaf_with_prereq = swarm_ontology();
  leaf_with_prereq.edges.push_back({"speed-leaf", "distance-leaf"});
  EXPECT_FALSE(validate_ontology(leaf_with_prereq).ok());
}

TEST(SemanticOrder, CaseStudyLeavesFirst) {
  EXPECT_EQ(semantic_order(swarm_ontology()),
            (std::vector<std::string>{"distance-leaf", "speed-leaf", "swarm-root"}));
}

TEST(SemanticOrder, LexicographicTiebreak) {
  ConceptOntology o;
  o.root = "C";
  o.concepts = {{"C", "", ConceptKind::kSynthesis}, {"B", "", ConceptKind::kLeaf},
                {"A", "", ConceptKind::kLeaf}};
  o.edges = {{"B", "C"}, {"A", "C"}};
  EXPECT_EQ(semantic_order(o), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(SemanticOrder, Singleton) {
  ConceptOntology o;
  o.root = "only";
  o.concepts = {{"only", "", ConceptKind::kLeaf}};
  EXPECT_EQ(semantic_order(o), std::vector<std::string>{"only"});
}

TEST(SemanticOrder, ChainKeepsDependencyOrderOverNames) {
  EXPECT_EQ(semantic_order(chain({"z", "m", "a"})), (std::vector<std::string>{"z", "m", "a"}));
}

TEST(SemanticOrder, RejectsInvalid) {
  ConceptOntology o = swarm_ontology();
  o.edges.push_back({"swarm-root", "distance-leaf"});
  EXPECT_THROW(semantic_order(o), Error);
}

TEST(LinkedCoverage, AllDeliveredInAnyLeafOrder) {
  CoverageResult r = linked_coverage(swarm_ontology(), {"speed-leaf", "distance-leaf", "swarm-root"});
  EXPECT_TRUE(r.linked);
  EXPECT_TRUE(r.missing.empty());
  EXPECT_TRUE(r.order_violations.empty());
}

TEST(LinkedCoverage, MissingRoot) {
  CoverageResult r = linked_coverage(swarm_ontology(), {"speed-leaf", "distance-leaf"});
  EXPECT_FALSE(r.linked);
  EXPECT_EQ(r.missing, std::vector<std::string>{"swarm-root"});
}

TEST(LinkedCoverage, NothingDelivered) {
  CoverageResult r = linked_coverage(swarm_ontology(), {});
  EXPECT_FALSE(r.linked);
  EXPECT_EQ(r.missing,
            (std::vector<std::string>{"distance-leaf", "speed-leaf", "swarm-root"}));
}

TEST(LinkedCoverage, SynthesisBeforePrerequisiteIsNotLinked) {
  CoverageResult r =
      linked_coverage(swarm_ontology(), {"speed-leaf", "swarm-root", "distance-leaf"});
  EXPECT_FALSE(r.linked);
  EXPECT_TRUE(r.missing.empty());
  EXPECT_EQ(r.order_violations, std::vector<std::string>{"swarm-root"});
}

TEST(LinkedCoverage, RepeatedChunksCount) {
  CoverageResult r = linked_coverage(
      swarm_ontology(), {"distance-leaf", "distance-leaf", "speed-leaf", "swarm-root", "swarm-root"});
  EXPECT_TRUE(r.linked);
}

TEST(OntologyQueries, PrerequisitesAndLeaves) {
  ConceptOntology o = swarm_ontology();
  EXPECT_EQ(o.prerequisites("swarm-root"),
            (std::vector<std::string>{"distance-leaf", "speed-leaf"}));
  EXPECT_TRUE(o.prerequisites("speed-leaf").empty());
  EXPECT_EQ(o.leaf_ids(), (std::vector<std::string>{"distance-leaf", "speed-leaf"}));
  EXPECT_EQ(o.find("nope"), nullptr);
}

}  // namespace
}  // namespace machedu
