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

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace machedu {

namespace {

using Adjacency = std::map<std::string, std::vector<std::string>>;

Adjacency successors(const ConceptOntology& o) {
  Adjacency adj;
  for (const auto& c : o.concepts) adj[c.id];
  for (const auto& e : o.edges) adj[e.prerequisite].push_back(e.dependent);
  return adj;
}

bool reaches_itself(const Adjacency& adj, const std::string& start) {
  std::set<std::string> seen;
  std::vector<std::string> stack = adj.at(start);
  while (!stack.empty()) {
    std::string v = std::move(stack.back());
    stack.pop_back();
    if (v == start) return true;
    if (!seen.insert(v).second) continue;
    for (const auto& w : adj.at(v)) stack.push_back(w);
  }
  return false;
}

// Kahn's algorithm with a min-ordered frontier. Returns fewer ids than there
// are concepts when the graph has a cycle.
std::vector<std::string> kahn(const ConceptOntology& o) {
  Adjacency adj = successors(o);
  std::map<std::string, int> in_degree;
  for (const auto& c : o.concepts) in_degree[c.id] = 0;
  for (const auto& e : o.edges) ++in_degree[e.dependent];

  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, deg] : in_degree) {
    if (deg == 0) ready.push(id);
  }
  std::vector<std::string> order;
  order.reserve(in_degree.size());
  while (!ready.empty()) {
    std::string v = ready.top();
    ready.pop();
    for (const auto& w : adj[v]) {
      if (--in_degree[w] == 0) ready.push(w);
    }
    order.push_back(std::move(v));
  }
  return order;
}

}  // namespace

const Concept* ConceptOntology::find(const std::string& id) const {
  auto it = std::find_if(concepts.begin(), concepts.end(),
                         [&](const Concept& c) { return c.id == id; });
  return it == concepts.end() ? nullptr : &*it;
}

std::vector<std::string> ConceptOntology::prerequisites(const std::string& id) const {
  std::vector<std::string> out;
  for (const auto& e : edges) {
    if (e.dependent == id) out.push_back(e.prerequisite);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> ConceptOntology::leaf_ids() const {
  std::vector<std::string> out;
  for (const auto& c : concepts) {
    if (c.kind == ConceptKind::kLeaf) out.push_back(c.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagnostics validate_ontology(const ConceptOntology& o) {
  Diagnostics d;
  if (o.concepts.empty()) {
    d.add("empty ontology");
    return d;
  }

  std::set<std::string> ids;
  for (const auto& c : o.concepts) {
    if (c.id.empty()) {
      d.add("concept with empty id");
    } else if (!ids.insert(c.id).second) {
      d.add("duplicate concept id: " + c.id);
    }
  }
  if (!ids.contains(o.root)) d.add("root not found: " + o.root);
  for (const auto& e : o.edges) {
    if (!ids.contains(e.prerequisite)) d.add("unknown edge endpoint: " + e.prerequisite);
    if (!ids.contains(e.dependent)) d.add("unknown edge endpoint: " + e.dependent);
  }
  // Graph checks below assume well-formed ids and endpoints.
  if (!d.ok()) return d;

  Adjacency adj = successors(o);
  if (kahn(o).size() != ids.size()) {
    for (const auto& id : ids) {
      if (reaches_itself(adj, id)) {
        d.add("cycle at " + id);
        break;
      }
    }
  }

  // Reverse search from the root over dependent -> prerequisite.
  Adjacency reverse;
  for (const auto& e : o.edges) reverse[e.dependent].push_back(e.prerequisite);
  std::set<std::string> reached{o.root};
  std::vector<std::string> stack{o.root};
  while (!stack.empty()) {
    std::string v = std::move(stack.back());
    stack.pop_back();
    for (const auto& p : reverse[v]) {
      if (reached.insert(p).second) stack.push_back(p);
    }
  }
  for (const auto& id : ids) {
    if (!reached.contains(id)) d.add("unreachable: " + id);
  }

  for (const auto& c : o.concepts) {
    const auto it = reverse.find(c.id);
    const bool has_prereq = it != reverse.end() && !it->second.empty();
    if (c.kind == ConceptKind::kLeaf && has_prereq) {
      d.add("leaf concept has prerequisites: " + c.id);
    } else if (c.kind == ConceptKind::kSynthesis && !has_prereq) {
      d.add("synthesis concept has no prerequisites: " + c.id);
    }
  }
  return d;
}

std::vector<std::string> semantic_order(const ConceptOntology& o) {
  Diagnostics d = validate_ontology(o);
  if (!d.ok()) throw Error("invalid ontology: " + d.messages.front());
  return kahn(o);
}

CoverageResult linked_coverage(const ConceptOntology& o,
                               const std::vector<std::string>& delivered) {
  std::map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < delivered.size(); ++i) {
    first_seen.try_emplace(delivered[i], i);
  }

  CoverageResult r;
  for (const auto& c : o.concepts) {
    auto it = first_seen.find(c.id);
    if (it == first_seen.end()) {
      r.missing.push_back(c.id);
      continue;
    }
    for (const auto& p : o.prerequisites(c.id)) {
      auto pit = first_seen.find(p);
      if (pit == first_seen.end() || pit->second > it->second) {
        r.order_violations.push_back(c.id);
        break;
      }
    }
  }
  std::sort(r.missing.begin(), r.missing.end());
  std::sort(r.order_violations.begin(), r.order_violations.end());
  r.linked = r.missing.empty() && r.order_violations.empty();
  return r;
}

}  // namespace machedu
