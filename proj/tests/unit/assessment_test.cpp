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

#include "machedu/assessment.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace machedu {
namespace {

using testing::binary_region;
using testing::joint_region;
using testing::slow_medium;

TEST(Assess, PerfectPredictor) {
  const RegionSpec spec = binary_region(slow_medium());
  Chunk data = generate_chunk(spec, "d", 100, 1);
  AssessmentResult r = assess([&](std::span<const double> x) { return label_point(spec, x); }, data,
                              2, 0.95, "lesson", AssessmentKind::kFormative);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.sample_size, 100u);
  EXPECT_EQ(r.chance_baseline, 0.5);
}

TEST(Assess, ConstantPredictorOnBalancedSet) {
  Chunk data = generate_chunk(binary_region(slow_medium()), "d", 100, 1);
  AssessmentResult r = assess([](std::span<const double>) { return 1; }, data, 2, 0.95, "lesson",
                              AssessmentKind::kFormative);
  EXPECT_EQ(r.accuracy, 0.5);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.confusion, (std::vector<std::vector<std::size_t>>{{0, 50}, {0, 50}}));
}

TEST(Assess, EmptySetRejected) {
  EXPECT_THROW(assess([](std::span<const double>) { return 0; }, Chunk{}, 2, 0.5, "x",
                      AssessmentKind::kSummative),
               Error);
}

TEST(GoalPassed, InclusiveThreshold) {
  EXPECT_TRUE(goal_passed(0.95, 0.95));
  EXPECT_FALSE(goal_passed(0.9499, 0.95));
}

TEST(SummativeAssess, UntrainedSynthesisIsNearChance) {
  NetworkConfig leaf;
  leaf.input_dim = 2;
  NeuralModule d = freeze(NeuralModule("distance-leaf", leaf, {3.0, 5.0, -150.0}));
  NeuralModule s = freeze(NeuralModule("speed-leaf", leaf, {5.0, 2.0, -100.0}));
  NetworkConfig syn;
  syn.input_dim = 2;
  syn.hidden_layers = {8};
  syn.output_dim = 4;
  syn.output_head = OutputHead::kSoftmaxMulticlass;
  ModularNetwork net = compose({d, s}, testing::swarm_ontology(), syn);
  Chunk test = generate_chunk(joint_region(), "swarm-root", 2000, 11);
  AssessmentResult r = summative_assess(net, test, 0.95, "classify-swarming");
  EXPECT_NEAR(r.accuracy, 0.25, 0.05);
  EXPECT_EQ(r.chance_baseline, 0.25);
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t row = 0;
    for (std::size_t v : r.confusion[k]) row += v;
    EXPECT_EQ(row, 500u);
  }
}

TEST(EmitReport, FieldOrderAndTimestamp) {
  RunArtifacts a;
  a.status = "complete";
  a.mode = "coupled";
  a.master_seed = 42;
  a.lesson_plan = {"a"};
  a.timestamp = "2026-01-01T00:00:00Z";
  nlohmann::ordered_json j = emit_report(a);
  EXPECT_EQ(j.begin().key(), "status");
  EXPECT_EQ(j[kTimestampField], "2026-01-01T00:00:00Z");
  EXPECT_TRUE(j["summative"].is_null());
}

TEST(EmitReport, FlagsFailingLesson) {
  RunArtifacts a;
  a.status = "goal_unmet";
  a.failing_lessons = {"fast-long"};
  nlohmann::ordered_json j = emit_report(a);
  EXPECT_EQ(j["status"], "goal_unmet");
  EXPECT_EQ(j["failing_lessons"], nlohmann::ordered_json::array({"fast-long"}));
}

}  // namespace
}  // namespace machedu
