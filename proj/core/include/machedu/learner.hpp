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

#ifndef MACHEDU_LEARNER_HPP_
#define MACHEDU_LEARNER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "machedu/datagen.hpp"
#include "machedu/ontology.hpp"
#include "machedu/types.hpp"

namespace machedu {

enum class Activation { kTanh, kSigmoid };

// kLinear (identity output, mse only) exists for regression-style checks and
// linear teaching students; classification modules use the other two.
enum class OutputHead { kSigmoidBinary, kSoftmaxMulticlass, kLinear };

enum class Loss { kCrossEntropy, kMse };

struct NetworkConfig {
  std::size_t input_dim = 2;
  std::vector<std::size_t> hidden_layers;
  std::size_t output_dim = 1;
  Activation activation = Activation::kTanh;
  OutputHead output_head = OutputHead::kSigmoidBinary;
  double learning_rate = 0.1;
  std::size_t max_epochs = 500;
  std::size_t batch_size = 32;
  std::uint64_t init_seed = 1;
  double init_range = 0.5;
  // Fixed (untrained) feature map applied before the first layer:
  // x'_i = (x_i - input_shift_i) * input_scale_i. Empty means identity.
  std::vector<double> input_shift;
  std::vector<double> input_scale;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

// Throws Error on the first violated invariant.
void check_config(const NetworkConfig& config);

// Dense layers, biases included.
std::size_t weight_count(const NetworkConfig& config);

// Maps a domain box onto [-1, 1] per feature.
void set_input_normalization(NetworkConfig& config, const std::vector<Interval>& box);

// Per-concept feedforward learner. Weights are stored flat: layer by layer,
// each layer's matrix row-major (one row per output unit) followed by that
// layer's biases. A frozen module rejects every weight mutation.
class NeuralModule {
 public:
  NeuralModule(std::string concept_id, NetworkConfig config, std::vector<double> weights);

  const std::string& concept_id() const { return concept_id_; }
  const NetworkConfig& config() const { return config_; }
  std::span<const double> weights() const { return weights_; }
  bool frozen() const { return frozen_; }

  void set_weights(std::vector<double> weights);
  void freeze() { frozen_ = true; }

  friend bool operator==(const NeuralModule&, const NeuralModule&) = default;

 private:
  std::string concept_id_;
  NetworkConfig config_;
  std::vector<double> weights_;
  bool frozen_ = false;
};

NeuralModule init_module(const NetworkConfig& config, std::string concept_id);

// Returns a frozen copy.
NeuralModule freeze(NeuralModule module);

// Activations of every layer: [0] is the normalized input, back() the output.
using LayerActivations = std::vector<std::vector<double>>;

std::vector<double> forward(const NeuralModule& module, std::span<const double> input,
                            LayerActivations* activations = nullptr);

// Sigmoid and linear heads threshold at 0.5; softmax takes the argmax.
int predict_class(const NeuralModule& module, std::span<const double> input);

// Mean loss over the rows of `inputs`. Targets are 0/1 for sigmoid heads, real
// values for linear heads and class indices for softmax heads. When
// `gradient` is non-null it receives d(loss)/d(weights).
double batch_loss(const NetworkConfig& config, std::span<const double> weights,
                  const Matrix& inputs, std::span<const double> targets, Loss loss,
                  std::vector<double>* gradient = nullptr);

std::vector<double> chunk_targets(const Chunk& chunk);

double accuracy(const NeuralModule& module, const Chunk& chunk);

struct TrainOptions {
  Loss loss = Loss::kCrossEntropy;
  double target_accuracy = 1.0;
  // Defaults to config().max_epochs.
  std::optional<std::size_t> max_epochs;
  // Seed of the per-epoch shuffle. Defaults to a value derived from init_seed.
  std::optional<std::uint64_t> shuffle_seed;
  // IEMT students learn across concepts and turn this off.
  bool require_matching_concept = true;
};

struct EpochStats {
  std::size_t epoch = 0;
  double loss = 0.0;
  double accuracy = 0.0;
};

struct TrainResult {
  std::vector<EpochStats> trace;
  bool reached_target = false;
};

// Mini-batch gradient descent. After every epoch the loss and accuracy over
// the whole chunk are recorded; training stops once the accuracy reaches
// target_accuracy or the epoch budget runs out.
TrainResult train_module(NeuralModule& module, const Chunk& chunk, const TrainOptions& options);

// max over weights of |g_a - g_fd| / max(1e-8, |g_a| + |g_fd|), with g_fd the
// central difference at step epsilon.
double gradient_check(const NeuralModule& module, const Matrix& inputs,
                      std::span<const double> targets, Loss loss, double epsilon);

// Frozen leaf modules feeding a trainable synthesis head. Slot i of the
// synthesis input is the output of the leaf for wiring()[i].
class ModularNetwork {
 public:
  const std::vector<NeuralModule>& leaves() const { return leaves_; }
  const NeuralModule& synthesis() const { return synthesis_; }
  const std::vector<std::string>& wiring() const { return wiring_; }

  std::vector<double> leaf_outputs(std::span<const double> input) const;
  std::vector<double> forward(std::span<const double> input) const;
  int predict_class(std::span<const double> input) const;

  // Chunk whose inputs are the leaf outputs of `chunk`'s inputs.
  Chunk lift(const Chunk& chunk) const;

 private:
  friend ModularNetwork compose(std::vector<NeuralModule> leaves,
                                const ConceptOntology& ontology,
                                const NetworkConfig& synthesis_config);
  friend TrainResult train_synthesis(ModularNetwork& network, const Chunk& chunk,
                                     const TrainOptions& options);

  ModularNetwork(std::vector<NeuralModule> leaves, NeuralModule synthesis,
                 std::vector<std::string> wiring)
      : leaves_(std::move(leaves)), synthesis_(std::move(synthesis)), wiring_(std::move(wiring)) {}

  std::vector<NeuralModule> leaves_;
  NeuralModule synthesis_;
  std::vector<std::string> wiring_;
};

// Leaves must be frozen, one per leaf concept of the ontology, each with a
// single output. Slots follow the semantic order of the leaves. The synthesis
// module is initialized from `synthesis_config` and tagged with the root.
ModularNetwork compose(std::vector<NeuralModule> leaves, const ConceptOntology& ontology,
                       const NetworkConfig& synthesis_config);

// Updates the synthesis weights only.
TrainResult train_synthesis(ModularNetwork& network, const Chunk& chunk,
                            const TrainOptions& options);

// Snapshot JSON: config, concept id, frozen flag and the flat weight array
// written with 17 significant digits.
std::string module_to_json(const NeuralModule& module);
NeuralModule module_from_json(const std::string& text);
std::string network_to_json(const ModularNetwork& network);

const char* to_string(Activation a);
const char* to_string(OutputHead h);
const char* to_string(Loss l);
Activation activation_from_string(const std::string& s);
OutputHead output_head_from_string(const std::string& s);
Loss loss_from_string(const std::string& s);

}  // namespace machedu

#endif  // MACHEDU_LEARNER_HPP_
