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

#ifndef MACHEDU_ONTOLOGY_HPP_
#define MACHEDU_ONTOLOGY_HPP_

#include <string>
#include <utility>
#include <vector>

#include "machedu/types.hpp"

namespace machedu {

enum class ConceptKind { kLeaf, kSynthesis };

struct Concept {
  std::string id;
  std::string label;
  ConceptKind kind = ConceptKind::kLeaf;

  friend bool operator==(const Concept&, const Concept&) = default;
};

// Prerequisite -> dependent. Data flows from leaf concepts up to the root.
struct ConceptEdge {
  std::string prerequisite;
  std::string dependent;

  friend bool operator==(const ConceptEdge&, const ConceptEdge&) = default;
};

// Directed acyclic concept graph whose root is the top-level task concept.
struct ConceptOntology {
  std::vector<Concept> concepts;
  std::vector<ConceptEdge> edges;
  std::string root;

  const Concept* find(const std::string& id) const;
  // Direct prerequisites of `id`, sorted by id.
  std::vector<std::string> prerequisites(const std::string& id) const;
  // Concept ids of kind leaf, sorted by id.
  std::vector<std::string> leaf_ids() const;

  friend bool operator==(const ConceptOntology&, const ConceptOntology&) = default;
};

// Checks, in order: nonempty, id uniqueness, root and edge endpoints exist,
// acyclicity ("cycle at X"), reachability of the root ("unreachable: X"),
// and leaf/synthesis prerequisite counts.
Diagnostics validate_ontology(const ConceptOntology& ontology);

// Topological order with ties broken by ascending id. Throws Error when the
// ontology is invalid.
std::vector<std::string> semantic_order(const ConceptOntology& ontology);

struct CoverageResult {
  bool linked = false;
  // Concepts with no delivered chunk, sorted.
  std::vector<std::string> missing;
  // Concepts first delivered before one of their prerequisites.
  std::vector<std::string> order_violations;
};

// `delivered` is the delivery sequence of concept ids (one entry per chunk,
// repeats allowed). Linked holds iff every concept was delivered and each
// concept's first delivery follows the first delivery of all its
// prerequisites.
CoverageResult linked_coverage(const ConceptOntology& ontology,
                               const std::vector<std::string>& delivered);

}  // namespace machedu

#endif  // MACHEDU_ONTOLOGY_HPP_
