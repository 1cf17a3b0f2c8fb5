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

// Seeded randomized properties across modules.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "machedu/controller.hpp"
#include "machedu/learner.hpp"
#include "machedu/ontology.hpp"
#include "machedu/seeds.hpp"
#include "machedu/teaching.hpp"

namespace machedu {
namespace {

ConceptOntology random_dag(Rng& rng, std::size_t n) {
  // Node i may only depend on lower-numbered nodes; every node except the
  // last feeds a later one, so all reach the root.
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(rng.below(1000000)) + "_" + std::to_string(i));
  rng.shuffle(std::span<std::string>(names));
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.insert({i, i + 1 + rng.below(n - i - 1)});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < 0.08) edges.insert({i, j});
    }
  }
  ConceptOntology o;
  o.root = names.back();
  std::vector<bool> has_prereq(n, false);
  for (const auto& [a, b] : edges) {
    o.edges.push_back({names[a], names[b]});
    has_prereq[b] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    o.concepts.push_back({names[i], "", has_prereq[i] ? ConceptKind::kSynthesis : ConceptKind::kLeaf});
  }
  return o;
}

// Straightforward quadratic oracle: repeatedly emit the smallest id whose
// prerequisites have all been emitted.
std::vector<std::string> order_oracle(const ConceptOntology& o) {
  std::set<std::string> done;
  std::vector<std::string> out;
  while (out.size() < o.concepts.size()) {
    std::string best;
    for (const auto& c : o.concepts) {
      if (done.count(c.id)) continue;
      bool ready = true;
      for (const auto& e : o.edges) {
        if (e.dependent == c.id && !done.count(e.prerequisite)) ready = false;
      }
      if (ready && (best.empty() || c.id < best)) best = c.id;
    }
    done.insert(best);
    out.push_back(best);
  }
  return out;
}

TEST(OntologyProperties, RandomDagsOrderMatchesOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    ConceptOntology o = random_dag(rng, n);
    ASSERT_TRUE(validate_ontology(o).ok()) << validate_ontology(o).messages.front();
    const auto order = semantic_order(o);
    EXPECT_EQ(order, order_oracle(o));
    EXPECT_TRUE(linked_coverage(o, order).linked);
    std::vector<std::string> missing_one(order.begin(), order.end() - 1);
    EXPECT_FALSE(linked_coverage(o, missing_one).linked);
  }
}

TEST(OntologyProperties, AddedBackEdgeIsReportedAsCycle) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    ConceptOntology o = random_dag(rng, 2 + rng.below(49));
    const auto order = semantic_order(o);
    o.edges.push_back({o.root, order.front()});
    Diagnostics d = validate_ontology(o);
    ASSERT_FALSE(d.ok());
    EXPECT_EQ(d.messages.front().rfind("cycle at ", 0), 0u);
  }
}

TEST(DatagenProperties, RandomSpecsRelabelConsistentlyAndBalance) {
  Rng rng(99);
  int generated = 0;
  for (int trial = 0; trial < 60; ++trial) {
    RegionSpec spec;
    const std::size_t dim = 2 + rng.below(2);
    for (std::size_t d = 0; d < dim; ++d) {
      const double lo = rng.uniform(-10, 10);
      spec.domain_box.push_back({lo, lo + rng.uniform(1, 20)});
    }
    const std::size_t k = trial % 2 == 0 ? 1 : 2;
    spec.label_mode = k == 1 ? LabelMode::kSingleHalfspaceBinary : LabelMode::kJointRegionClass;
    for (std::size_t h = 0; h < k; ++h) {
      HalfspaceSpec hs;
      double offset = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        hs.coefficients.push_back(rng.uniform(-1, 1));
        const auto& iv = spec.domain_box[d];
        offset += hs.coefficients.back() * 0.5 * (iv.lo + iv.hi);
      }
      hs.offset = offset;  // through the box centre
      spec.halfspaces.push_back(hs);
    }
    const std::size_t size = 2 + rng.below(120);
    Chunk c;
    try {
      c = generate_chunk(spec, "p", size, 1000 + trial);
    } catch (const Error& e) {
      // Only a genuinely empty joint class may fail.
      EXPECT_NE(std::string(e.what()).find("unreachable"), std::string::npos);
      continue;
    }
    ++generated;
    std::vector<std::size_t> counts(spec.num_classes(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto x = c.inputs.row(i);
      for (std::size_t d = 0; d < dim; ++d) {
        EXPECT_GE(x[d], spec.domain_box[d].lo);
        EXPECT_LE(x[d], spec.domain_box[d].hi);
      }
      EXPECT_EQ(label_point(spec, x), c.labels[i]);
      ++counts[static_cast<std::size_t>(c.labels[i])];
    }
    const std::size_t lo = size / spec.num_classes();
    for (std::size_t v : counts) {
      EXPECT_GE(v, lo);
      EXPECT_LE(v, lo + 1);
    }
  }
  EXPECT_GT(generated, 40);
}

TEST(LearnerProperties, GradientMatchesFiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    NetworkConfig c;
    c.input_dim = 1 + rng.below(4);
    const std::size_t depth = rng.below(3);
    for (std::size_t l = 0; l < depth; ++l) c.hidden_layers.push_back(1 + rng.below(8));
    c.activation = trial % 2 ? Activation::kTanh : Activation::kSigmoid;
    const bool softmax = trial % 3 == 0;
    c.output_head = softmax ? OutputHead::kSoftmaxMulticlass : OutputHead::kSigmoidBinary;
    c.output_dim = softmax ? 2 + rng.below(3) : 1;
    c.init_seed = 100 + static_cast<std::uint64_t>(trial);
    NeuralModule m = init_module(c, "g");
    Matrix x(0, c.input_dim);
    std::vector<double> y;
    for (int r = 0; r < 8; ++r) {
      std::vector<double> row;
      for (std::size_t d = 0; d < c.input_dim; ++d) row.push_back(rng.uniform(-1, 1));
      x.append_row(row);
      y.push_back(static_cast<double>(rng.below(c.output_dim == 1 ? 2 : c.output_dim)));
    }
    EXPECT_LT(gradient_check(m, x, y, Loss::kCrossEntropy, 1e-5), 1e-5) << "trial " << trial;
    EXPECT_LT(gradient_check(m, x, y, Loss::kMse, 1e-5), 1e-5) << "trial " << trial;
  }
}

TEST(TeachingProperties, WeightAnglesAreScaleInvariant) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<double> w(n);
    for (double& v : w) v = rng.uniform(-3, 3);
    const double scale = std::exp(rng.uniform(-5, 5));
    std::vector<double> scaled = w;
    for (double& v : scaled) v *= scale;
    const auto a = weight_angles(w, n);
    const auto b = weight_angles(scaled, n);
    ASSERT_EQ(a.size(), n - 1);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(ControllerProperties, RandomModelsKeepInvariants) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    SkillFlowModel m;
    const std::size_t levels = 1 + rng.below(4);
    for (std::size_t l = 0; l < levels; ++l) {
      m.levels.push_back({"s" + std::to_string(l), 0.0, rng.uniform(0.1, 1.0), rng.uniform(0.05, 2.0)});
    }
    m.lesson_pool = rng.uniform(0, 20);
    m.learner_speed = rng.uniform(0, 2);
    m.decay_rate = rng.uniform(0, 0.3);
    m.dt = rng.uniform(0.05, 0.5);
    const double pool0 = m.lesson_pool;
    auto traj = run_simulation(m, 40.0);
    double drawn = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
      const auto& r = traj[i];
      EXPECT_GE(r.pool, 0.0);
      for (double s : r.stocks) EXPECT_GE(s, 0.0);
      drawn += r.draw_rate * m.dt;
      EXPECT_NEAR(pool0 - drawn, r.pool, 1e-9);
    }
  }
}

}  // namespace
}  // namespace machedu
