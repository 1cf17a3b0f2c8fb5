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

#include "machedu/learner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "fixtures.hpp"

namespace machedu {
namespace {

using testing::binary_region;
using testing::joint_region;
using testing::slow_medium;
using testing::swarm_box;
using testing::swarm_ontology;

NetworkConfig leaf_config(std::uint64_t seed = 1) {
  NetworkConfig c;
  c.input_dim = 2;
  c.hidden_layers = {4};
  c.output_dim = 1;
  c.init_seed = seed;
  set_input_normalization(c, swarm_box());
  return c;
}

TEST(InitModule, WeightCountAndDeterminism) {
  NetworkConfig c = leaf_config();
  EXPECT_EQ(weight_count(c), 17u);
  NeuralModule a = init_module(c, "x");
  NeuralModule b = init_module(c, "x");
  ASSERT_EQ(a.weights().size(), 17u);
  EXPECT_TRUE(std::equal(a.weights().begin(), a.weights().end(), b.weights().begin()));
  for (double w : a.weights()) EXPECT_LE(std::fabs(w), c.init_range);
}

TEST(InitModule, RejectsBadConfig) {
  NetworkConfig c = leaf_config();
  c.init_range = 0.0;
  EXPECT_THROW(init_module(c, "x"), Error);
  c = leaf_config();
  c.output_head = OutputHead::kSoftmaxMulticlass;
  EXPECT_THROW(init_module(c, "x"), Error);
}

TEST(Forward, ZeroWeightsGiveOneHalf) {
  NetworkConfig c = leaf_config();
  NeuralModule m("x", c, std::vector<double>(weight_count(c), 0.0));
  for (double t : {0.0, 13.0, 60.0}) {
    EXPECT_DOUBLE_EQ(forward(m, std::vector<double>{t, 60.0 - t})[0], 0.5);
  }
}

TEST(Forward, RecordsActivations) {
  NeuralModule m = init_module(leaf_config(), "x");
  LayerActivations acts;
  auto out = forward(m, std::vector<double>{10.0, 20.0}, &acts);
  ASSERT_EQ(acts.size(), 3u);
  EXPECT_EQ(acts[0].size(), 2u);
  EXPECT_EQ(acts[1].size(), 4u);
  EXPECT_EQ(acts[2], out);
}

TEST(Forward, DimensionMismatch) {
  NeuralModule m = init_module(leaf_config(), "x");
  EXPECT_THROW(forward(m, std::vector<double>{1.0, 2.0, 3.0}), Error);
}

TEST(Forward, SoftmaxSumsToOne) {
  NetworkConfig c;
  c.input_dim = 2;
  c.hidden_layers = {8};
  c.output_dim = 4;
  c.output_head = OutputHead::kSoftmaxMulticlass;
  c.init_range = 3.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.init_seed = seed;
    NeuralModule m = init_module(c, "s");
    auto p = forward(m, std::vector<double>{0.3 * static_cast<double>(seed), -1.0});
    double sum = 0.0;
    for (double v : p) {
      EXPECT_GT(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(TrainModule, LearnsSlowMediumBoundary) {
  NetworkConfig c = leaf_config(3);
  c.learning_rate = 0.1;
  c.max_epochs = 500;
  const RegionSpec spec = binary_region(slow_medium());
  Chunk train = generate_chunk(spec, "distance-leaf", 200, 7);
  Chunk holdout = generate_chunk(spec, "distance-leaf", 1000, 8);
  NeuralModule m = init_module(c, "distance-leaf");
  TrainResult r = train_module(m, train, {});
  EXPECT_FALSE(r.trace.empty());
  EXPECT_GE(accuracy(m, holdout), 0.98);
  EXPECT_GT(forward(m, std::vector<double>{55.0, 55.0})[0], 0.5);
  EXPECT_LT(forward(m, std::vector<double>{2.0, 2.0})[0], 0.5);
}

TEST(TrainModule, ZeroEpochsLeavesWeights) {
  NeuralModule m = init_module(leaf_config(), "distance-leaf");
  const std::vector<double> before(m.weights().begin(), m.weights().end());
  TrainOptions o;
  o.max_epochs = 0;
  TrainResult r = train_module(m, generate_chunk(binary_region(slow_medium()), "distance-leaf", 20, 1), o);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_TRUE(std::equal(before.begin(), before.end(), m.weights().begin()));
}

TEST(TrainModule, Deterministic) {
  Chunk data = generate_chunk(binary_region(slow_medium()), "distance-leaf", 100, 2);
  NeuralModule a = init_module(leaf_config(), "distance-leaf");
  NeuralModule b = init_module(leaf_config(), "distance-leaf");
  TrainOptions o;
  o.max_epochs = 30;
  o.target_accuracy = 2.0;
  train_module(a, data, o);
  train_module(b, data, o);
  EXPECT_EQ(std::memcmp(a.weights().data(), b.weights().data(), a.weights().size() * sizeof(double)), 0);
}

TEST(TrainModule, Errors) {
  Chunk data = generate_chunk(binary_region(slow_medium()), "distance-leaf", 10, 2);
  NeuralModule frozen = freeze(init_module(leaf_config(), "distance-leaf"));
  EXPECT_THROW(train_module(frozen, data, {}), Error);
  NeuralModule m = init_module(leaf_config(), "distance-leaf");
  EXPECT_THROW(train_module(m, Chunk{"distance-leaf", Matrix(0, 2), {}, 0}, {}), Error);
  NeuralModule other = init_module(leaf_config(), "speed-leaf");
  EXPECT_THROW(train_module(other, data, {}), Error);
}

TEST(GradientCheck, SeededLeafModule) {
  NetworkConfig c = leaf_config(9);
  NeuralModule m = init_module(c, "x");
  Chunk data = generate_chunk(binary_region(slow_medium()), "x", 16, 4);
  const auto targets = chunk_targets(data);
  EXPECT_LT(gradient_check(m, data.inputs, targets, Loss::kCrossEntropy, 1e-5), 1e-5);
  EXPECT_LT(gradient_check(m, data.inputs, targets, Loss::kMse, 1e-5), 1e-5);
}

TEST(GradientCheck, SingleWeightLinearClosedForm) {
  NetworkConfig c;
  c.input_dim = 1;
  c.output_dim = 1;
  c.output_head = OutputHead::kLinear;
  // One weight plus a bias; the bias is zero so y_hat = w x.
  NeuralModule m("x", c, std::vector<double>{0.7, 0.0});
  const Matrix x(1, 1, {2.0});
  const std::vector<double> y{3.0};
  std::vector<double> grad;
  batch_loss(c, m.weights(), x, y, Loss::kMse, &grad);
  EXPECT_NEAR(grad[0], 2.0 * (0.7 * 2.0 - 3.0) * 2.0, 1e-12);
  EXPECT_LT(gradient_check(m, x, y, Loss::kMse, 1e-5), 1e-9);
}

TEST(GradientCheck, RejectsZeroEpsilon) {
  NeuralModule m = init_module(leaf_config(), "x");
  EXPECT_THROW(gradient_check(m, Matrix(1, 2, {1.0, 1.0}), std::vector<double>{1.0},
                              Loss::kCrossEntropy, 0.0),
               Error);
}

TEST(Freeze, RejectsMutation) {
  NeuralModule m = freeze(init_module(leaf_config(), "x"));
  EXPECT_TRUE(m.frozen());
  EXPECT_THROW(m.set_weights(std::vector<double>(17, 0.0)), Error);
}

struct Leaves {
  NeuralModule distance;
  NeuralModule speed;
};

Leaves fixed_leaves() {
  // Hand-set linear leaves (no hidden layer) that realize the two boundaries.
  NetworkConfig c;
  c.input_dim = 2;
  c.output_dim = 1;
  return {freeze(NeuralModule("distance-leaf", c, {3.0, 5.0, -150.0})),
          freeze(NeuralModule("speed-leaf", c, {5.0, 2.0, -100.0}))};
}

NetworkConfig synthesis_config() {
  NetworkConfig s;
  s.input_dim = 2;
  s.hidden_layers = {8};
  s.output_dim = 4;
  s.output_head = OutputHead::kSoftmaxMulticlass;
  s.learning_rate = 0.5;
  s.max_epochs = 400;
  s.batch_size = 16;
  return s;
}

TEST(Compose, WiringFollowsSemanticOrder) {
  Leaves l = fixed_leaves();
  ModularNetwork net = compose({l.speed, l.distance}, swarm_ontology(), synthesis_config());
  EXPECT_EQ(net.wiring(), (std::vector<std::string>{"distance-leaf", "speed-leaf"}));
  EXPECT_EQ(net.synthesis().concept_id(), "swarm-root");
  auto out = net.leaf_outputs(std::vector<double>{0.0, 60.0});
  EXPECT_GT(out[0], 0.5);  // 3*0 + 5*60 >= 150
  EXPECT_GT(out[1], 0.5);  // 5*0 + 2*60 >= 100
  out = net.leaf_outputs(std::vector<double>{0.0, 40.0});
  EXPECT_GT(out[0], 0.5);
  EXPECT_LT(out[1], 0.5);
}

TEST(Compose, Errors) {
  Leaves l = fixed_leaves();
  NetworkConfig c;
  c.input_dim = 2;
  NeuralModule unfrozen("speed-leaf", c, {5.0, 2.0, -100.0});
  EXPECT_THROW(compose({l.distance, unfrozen}, swarm_ontology(), synthesis_config()), Error);
  NetworkConfig wide = synthesis_config();
  wide.input_dim = 3;
  EXPECT_THROW(compose({l.distance, l.speed}, swarm_ontology(), wide), Error);
  EXPECT_THROW(compose({l.distance}, swarm_ontology(), synthesis_config()), Error);
}

TEST(TrainSynthesis, LeavesStayBitIdentical) {
  Leaves l = fixed_leaves();
  ModularNetwork net = compose({l.distance, l.speed}, swarm_ontology(), synthesis_config());
  const std::vector<double> d0(net.leaves()[0].weights().begin(), net.leaves()[0].weights().end());
  const std::vector<double> s0(net.leaves()[1].weights().begin(), net.leaves()[1].weights().end());
  Chunk data = generate_chunk(joint_region(), "swarm-root", 200, 5);
  train_synthesis(net, data, {});
  EXPECT_EQ(std::memcmp(d0.data(), net.leaves()[0].weights().data(), d0.size() * sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(s0.data(), net.leaves()[1].weights().data(), s0.size() * sizeof(double)), 0);
  Chunk test = generate_chunk(joint_region(), "swarm-root", 400, 6);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    hits += net.predict_class(test.inputs.row(i)) == test.labels[i];
  }
  EXPECT_GE(static_cast<double>(hits) / 400.0, 0.95);
}

TEST(Snapshot, RoundTripIsExact) {
  NeuralModule m = init_module(leaf_config(21), "distance-leaf");
  NeuralModule back = module_from_json(module_to_json(m));
  EXPECT_EQ(back, m);
  EXPECT_THROW(module_from_json("{not json"), Error);
}

TEST(Names, RoundTrip) {
  for (auto a : {Activation::kTanh, Activation::kSigmoid}) EXPECT_EQ(activation_from_string(to_string(a)), a);
  for (auto h : {OutputHead::kSigmoidBinary, OutputHead::kSoftmaxMulticlass, OutputHead::kLinear}) {
    EXPECT_EQ(output_head_from_string(to_string(h)), h);
  }
  for (auto l : {Loss::kCrossEntropy, Loss::kMse}) EXPECT_EQ(loss_from_string(to_string(l)), l);
  EXPECT_THROW(loss_from_string("hinge"), Error);
}

}  // namespace
}  // namespace machedu
