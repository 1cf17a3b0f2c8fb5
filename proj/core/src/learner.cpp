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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "machedu/seeds.hpp"
#include "machedu/text_io.hpp"

namespace machedu {

namespace {

struct LayerShape {
  std::size_t in;
  std::size_t out;
  std::size_t offset;  // first weight of this layer in the flat vector
};

std::vector<LayerShape> layer_shapes(const NetworkConfig& c) {
  std::vector<std::size_t> widths{c.input_dim};
  widths.insert(widths.end(), c.hidden_layers.begin(), c.hidden_layers.end());
  widths.push_back(c.output_dim);
  std::vector<LayerShape> shapes;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    shapes.push_back({widths[l], widths[l + 1], offset});
    offset += widths[l] * widths[l + 1] + widths[l + 1];
  }
  return shapes;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double hidden_act(Activation a, double z) {
  return a == Activation::kTanh ? std::tanh(z) : sigmoid(z);
}

double hidden_act_grad(Activation a, double act) {
  return a == Activation::kTanh ? 1.0 - act * act : act * (1.0 - act);
}

void softmax_inplace(std::vector<double>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

std::vector<double> normalized_input(const NetworkConfig& c, std::span<const double> x) {
  std::vector<double> a(x.begin(), x.end());
  if (!c.input_shift.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] - c.input_shift[i]) * c.input_scale[i];
  }
  return a;
}

// Pre-activations of every layer and post-activations of the hidden layers.
struct Pass {
  std::vector<std::vector<double>> acts;  // acts[0] input, acts[l+1] layer l output
  std::vector<double> logits;             // last layer pre-activation
};

Pass run_forward(const NetworkConfig& c, const std::vector<LayerShape>& shapes,
                 std::span<const double> w, std::span<const double> x) {
  Pass p;
  p.acts.push_back(normalized_input(c, x));
  for (std::size_t l = 0; l < shapes.size(); ++l) {
    const auto& s = shapes[l];
    const auto& in = p.acts.back();
    std::vector<double> z(s.out);
    const double* bias = w.data() + s.offset + s.in * s.out;
    for (std::size_t o = 0; o < s.out; ++o) {
      const double* row = w.data() + s.offset + o * s.in;
      double acc = bias[o];
      for (std::size_t i = 0; i < s.in; ++i) acc += row[i] * in[i];
      z[o] = acc;
    }
    if (l + 1 < shapes.size()) {
      for (double& v : z) v = hidden_act(c.activation, v);
      p.acts.push_back(std::move(z));
    } else {
      p.logits = z;
      switch (c.output_head) {
        case OutputHead::kSigmoidBinary:
          for (double& v : z) v = sigmoid(v);
          break;
        case OutputHead::kSoftmaxMulticlass:
          softmax_inplace(z);
          break;
        case OutputHead::kLinear:
          break;
      }
      p.acts.push_back(std::move(z));
    }
  }
  return p;
}

// Loss of one sample and d(loss)/d(logits).
double sample_loss(const NetworkConfig& c, const Pass& p, double target, Loss loss,
                   std::vector<double>& dlogits) {
  const auto& out = p.acts.back();
  const auto& z = p.logits;
  dlogits.assign(z.size(), 0.0);
  switch (c.output_head) {
    case OutputHead::kSigmoidBinary: {
      const double s = out[0];
      if (loss == Loss::kCrossEntropy) {
        dlogits[0] = s - target;
        return std::max(z[0], 0.0) + std::log1p(std::exp(-std::fabs(z[0]))) - target * z[0];
      }
      dlogits[0] = 2.0 * (s - target) * s * (1.0 - s);
      return (s - target) * (s - target);
    }
    case OutputHead::kSoftmaxMulticlass: {
      const auto k = static_cast<std::size_t>(target);
      if (target < 0 || k >= out.size() || static_cast<double>(k) != target) {
        throw Error("softmax target is not a valid class index");
      }
      if (loss == Loss::kCrossEntropy) {
        const double m = *std::max_element(z.begin(), z.end());
        double sum = 0.0;
        for (double v : z) sum += std::exp(v - m);
        for (std::size_t j = 0; j < z.size(); ++j) dlogits[j] = out[j] - (j == k ? 1.0 : 0.0);
        return m + std::log(sum) - z[k];
      }
      double value = 0.0;
      double inner = 0.0;
      for (std::size_t j = 0; j < out.size(); ++j) {
        const double diff = out[j] - (j == k ? 1.0 : 0.0);
        value += diff * diff;
        inner += diff * out[j];
      }
      for (std::size_t j = 0; j < out.size(); ++j) {
        const double diff = out[j] - (j == k ? 1.0 : 0.0);
        dlogits[j] = 2.0 * out[j] * (diff - inner);
      }
      return value;
    }
    case OutputHead::kLinear: {
      if (loss != Loss::kMse) throw Error("linear output head supports mse loss only");
      dlogits[0] = 2.0 * (out[0] - target);
      return (out[0] - target) * (out[0] - target);
    }
  }
  return 0.0;
}

void accumulate_gradient(const NetworkConfig& c, const std::vector<LayerShape>& shapes,
                         std::span<const double> w, const Pass& p,
                         std::vector<double> delta, std::vector<double>& grad) {
  for (std::size_t l = shapes.size(); l-- > 0;) {
    const auto& s = shapes[l];
    const auto& in = p.acts[l];
    double* gw = grad.data() + s.offset;
    double* gb = gw + s.in * s.out;
    for (std::size_t o = 0; o < s.out; ++o) {
      for (std::size_t i = 0; i < s.in; ++i) gw[o * s.in + i] += delta[o] * in[i];
      gb[o] += delta[o];
    }
    if (l == 0) break;
    std::vector<double> prev(s.in, 0.0);
    for (std::size_t o = 0; o < s.out; ++o) {
      const double* row = w.data() + s.offset + o * s.in;
      for (std::size_t i = 0; i < s.in; ++i) prev[i] += row[i] * delta[o];
    }
    for (std::size_t i = 0; i < s.in; ++i) prev[i] *= hidden_act_grad(c.activation, in[i]);
    delta = std::move(prev);
  }
}

int class_of(const NetworkConfig& c, const std::vector<double>& out) {
  if (c.output_head == OutputHead::kSoftmaxMulticlass) {
    return static_cast<int>(std::max_element(out.begin(), out.end()) - out.begin());
  }
  return out[0] >= 0.5 ? 1 : 0;
}

}  // namespace

void check_config(const NetworkConfig& c) {
  if (c.input_dim < 1 || c.output_dim < 1) throw Error("network dims must be >= 1");
  for (auto h : c.hidden_layers) {
    if (h < 1) throw Error("hidden layer width must be >= 1");
  }
  if (!(c.learning_rate > 0)) throw Error("learning_rate must be > 0");
  if (!(c.init_range > 0)) throw Error("init_range must be > 0");
  if (c.batch_size < 1) throw Error("batch_size must be >= 1");
  if (c.output_head == OutputHead::kSoftmaxMulticlass && c.output_dim < 2) {
    throw Error("softmax head needs output_dim >= 2");
  }
  if (c.output_head != OutputHead::kSoftmaxMulticlass && c.output_dim != 1) {
    throw Error("sigmoid and linear heads need output_dim == 1");
  }
  if (c.input_shift.size() != c.input_scale.size() ||
      (!c.input_shift.empty() && c.input_shift.size() != c.input_dim)) {
    throw Error("input normalization does not match input_dim");
  }
}

std::size_t weight_count(const NetworkConfig& c) {
  std::size_t n = 0;
  for (const auto& s : layer_shapes(c)) n += s.in * s.out + s.out;
  return n;
}

void set_input_normalization(NetworkConfig& c, const std::vector<Interval>& box) {
  c.input_shift.clear();
  c.input_scale.clear();
  for (const auto& iv : box) {
    c.input_shift.push_back(0.5 * (iv.lo + iv.hi));
    c.input_scale.push_back(2.0 / (iv.hi - iv.lo));
  }
}

NeuralModule::NeuralModule(std::string concept_id, NetworkConfig config,
                           std::vector<double> weights)
    : concept_id_(std::move(concept_id)), config_(std::move(config)), weights_(std::move(weights)) {
  check_config(config_);
  if (weights_.size() != weight_count(config_)) {
    throw Error("weight count " + std::to_string(weights_.size()) + " does not match architecture (" +
                std::to_string(weight_count(config_)) + ")");
  }
}

void NeuralModule::set_weights(std::vector<double> weights) {
  if (frozen_) throw Error("module " + concept_id_ + " is frozen");
  if (weights.size() != weights_.size()) throw Error("weight count does not match architecture");
  weights_ = std::move(weights);
}

NeuralModule init_module(const NetworkConfig& config, std::string concept_id) {
  check_config(config);
  Rng rng(config.init_seed);
  std::vector<double> w(weight_count(config));
  for (double& v : w) v = rng.uniform(-config.init_range, config.init_range);
  return NeuralModule(std::move(concept_id), config, std::move(w));
}

NeuralModule freeze(NeuralModule module) {
  module.freeze();
  return module;
}

std::vector<double> forward(const NeuralModule& m, std::span<const double> input,
                            LayerActivations* activations) {
  if (input.size() != m.config().input_dim) {
    throw Error("input dimension " + std::to_string(input.size()) + " does not match module " +
                m.concept_id() + " (" + std::to_string(m.config().input_dim) + ")");
  }
  Pass p = run_forward(m.config(), layer_shapes(m.config()), m.weights(), input);
  std::vector<double> out = p.acts.back();
  if (activations) *activations = std::move(p.acts);
  return out;
}

int predict_class(const NeuralModule& m, std::span<const double> input) {
  return class_of(m.config(), forward(m, input));
}

double batch_loss(const NetworkConfig& c, std::span<const double> w, const Matrix& inputs,
                  std::span<const double> targets, Loss loss, std::vector<double>* gradient) {
  if (inputs.rows() == 0) throw Error("empty batch");
  if (inputs.rows() != targets.size()) throw Error("targets do not match inputs");
  if (inputs.cols() != c.input_dim) throw Error("input dimension does not match config");
  const auto shapes = layer_shapes(c);
  if (gradient) gradient->assign(w.size(), 0.0);
  double total = 0.0;
  std::vector<double> dlogits;
  for (std::size_t r = 0; r < inputs.rows(); ++r) {
    Pass p = run_forward(c, shapes, w, inputs.row(r));
    total += sample_loss(c, p, targets[r], loss, dlogits);
    if (gradient) accumulate_gradient(c, shapes, w, p, dlogits, *gradient);
  }
  const double n = static_cast<double>(inputs.rows());
  if (gradient) {
    for (double& g : *gradient) g /= n;
  }
  return total / n;
}

std::vector<double> chunk_targets(const Chunk& chunk) {
  return {chunk.labels.begin(), chunk.labels.end()};
}

double accuracy(const NeuralModule& m, const Chunk& chunk) {
  if (chunk.size() == 0) throw Error("empty chunk");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < chunk.size(); ++r) {
    if (predict_class(m, chunk.inputs.row(r)) == chunk.labels[r]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(chunk.size());
}

TrainResult train_module(NeuralModule& m, const Chunk& chunk, const TrainOptions& options) {
  if (m.frozen()) throw Error("cannot train frozen module " + m.concept_id());
  if (chunk.size() == 0) throw Error("cannot train on an empty chunk");
  if (options.require_matching_concept && chunk.concept_id != m.concept_id()) {
    throw Error("chunk concept " + chunk.concept_id + " does not match module " + m.concept_id());
  }
  const NetworkConfig& c = m.config();
  if (chunk.inputs.cols() != c.input_dim) throw Error("chunk dimension does not match module");

  const std::size_t epochs = options.max_epochs.value_or(c.max_epochs);
  Rng rng(options.shuffle_seed.value_or(hash64(c.init_seed, "shuffle", 0)));
  const std::vector<double> targets = chunk_targets(chunk);
  std::vector<std::size_t> order(chunk.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> w(m.weights().begin(), m.weights().end());
  std::vector<double> grad;
  TrainResult result;
  for (std::size_t epoch = 1; epoch <= epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += c.batch_size) {
      const std::size_t end = std::min(order.size(), start + c.batch_size);
      Matrix batch(0, c.input_dim);
      std::vector<double> batch_targets;
      for (std::size_t i = start; i < end; ++i) {
        batch.append_row(chunk.inputs.row(order[i]));
        batch_targets.push_back(targets[order[i]]);
      }
      batch_loss(c, w, batch, batch_targets, options.loss, &grad);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c.learning_rate * grad[k];
    }
    m.set_weights(w);
    EpochStats stats{epoch, batch_loss(c, w, chunk.inputs, targets, options.loss),
                     accuracy(m, chunk)};
    if (!std::isfinite(stats.loss)) throw Error("training diverged (non-finite loss)");
    result.trace.push_back(stats);
    if (stats.accuracy >= options.target_accuracy) {
      result.reached_target = true;
      break;
    }
  }
  return result;
}

double gradient_check(const NeuralModule& m, const Matrix& inputs, std::span<const double> targets,
                      Loss loss, double epsilon) {
  if (!(epsilon > 0)) throw Error("epsilon must be > 0");
  const NetworkConfig& c = m.config();
  std::vector<double> w(m.weights().begin(), m.weights().end());
  std::vector<double> analytic;
  const double base = batch_loss(c, w, inputs, targets, loss, &analytic);
  if (!std::isfinite(base)) throw Error("non-finite loss");
  double worst = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double keep = w[k];
    w[k] = keep + epsilon;
    const double up = batch_loss(c, w, inputs, targets, loss);
    w[k] = keep - epsilon;
    const double down = batch_loss(c, w, inputs, targets, loss);
    w[k] = keep;
    if (!std::isfinite(up) || !std::isfinite(down)) throw Error("non-finite loss");
    const double numeric = (up - down) / (2.0 * epsilon);
    const double rel = std::fabs(analytic[k] - numeric) /
                       std::max(1e-8, std::fabs(analytic[k]) + std::fabs(numeric));
    worst = std::max(worst, rel);
  }
  return worst;
}

std::vector<double> ModularNetwork::leaf_outputs(std::span<const double> input) const {
  std::vector<double> out;
  out.reserve(leaves_.size());
  for (const auto& leaf : leaves_) out.push_back(machedu::forward(leaf, input)[0]);
  return out;
}

std::vector<double> ModularNetwork::forward(std::span<const double> input) const {
  return machedu::forward(synthesis_, leaf_outputs(input));
}

int ModularNetwork::predict_class(std::span<const double> input) const {
  return machedu::predict_class(synthesis_, leaf_outputs(input));
}

Chunk ModularNetwork::lift(const Chunk& chunk) const {
  Chunk out;
  out.concept_id = chunk.concept_id;
  out.seed = chunk.seed;
  out.labels = chunk.labels;
  out.inputs = Matrix(0, leaves_.size());
  for (std::size_t r = 0; r < chunk.inputs.rows(); ++r) {
    out.inputs.append_row(leaf_outputs(chunk.inputs.row(r)));
  }
  return out;
}

ModularNetwork compose(std::vector<NeuralModule> leaves, const ConceptOntology& ontology,
                       const NetworkConfig& synthesis_config) {
  const std::vector<std::string> order = semantic_order(ontology);
  std::vector<std::string> leaf_concepts;
  for (const auto& id : order) {
    if (ontology.find(id)->kind == ConceptKind::kLeaf) leaf_concepts.push_back(id);
  }
  if (leaves.size() != leaf_concepts.size()) {
    throw Error("compose needs one module per leaf concept (" + std::to_string(leaf_concepts.size()) +
                "), got " + std::to_string(leaves.size()));
  }
  std::vector<NeuralModule> wired;
  for (const auto& id : leaf_concepts) {
    auto it = std::find_if(leaves.begin(), leaves.end(),
                           [&](const NeuralModule& m) { return m.concept_id() == id; });
    if (it == leaves.end()) throw Error("no module for leaf concept " + id);
    if (!it->frozen()) throw Error("leaf module " + id + " is not frozen");
    if (it->config().output_dim != 1) throw Error("leaf module " + id + " must have one output");
    wired.push_back(*it);
  }
  if (synthesis_config.input_dim != leaf_concepts.size()) {
    throw Error("synthesis input_dim " + std::to_string(synthesis_config.input_dim) +
                " does not match leaf count " + std::to_string(leaf_concepts.size()));
  }
  NeuralModule synthesis = init_module(synthesis_config, ontology.root);
  return ModularNetwork(std::move(wired), std::move(synthesis), std::move(leaf_concepts));
}

TrainResult train_synthesis(ModularNetwork& network, const Chunk& chunk,
                            const TrainOptions& options) {
  return train_module(network.synthesis_, network.lift(chunk), options);
}

const char* to_string(Activation a) { return a == Activation::kTanh ? "tanh" : "sigmoid"; }

const char* to_string(OutputHead h) {
  switch (h) {
    case OutputHead::kSigmoidBinary:
      return "sigmoid-binary";
    case OutputHead::kSoftmaxMulticlass:
      return "softmax-multiclass";
    case OutputHead::kLinear:
      return "linear";
  }
  return "";
}

const char* to_string(Loss l) { return l == Loss::kCrossEntropy ? "cross-entropy" : "mse"; }

Activation activation_from_string(const std::string& s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "sigmoid") return Activation::kSigmoid;
  throw Error("unknown activation: " + s);
}

OutputHead output_head_from_string(const std::string& s) {
  if (s == "sigmoid-binary") return OutputHead::kSigmoidBinary;
  if (s == "softmax-multiclass") return OutputHead::kSoftmaxMulticlass;
  if (s == "linear") return OutputHead::kLinear;
  throw Error("unknown output head: " + s);
}

Loss loss_from_string(const std::string& s) {
  if (s == "cross-entropy") return Loss::kCrossEntropy;
  if (s == "mse") return Loss::kMse;
  throw Error("unknown loss: " + s);
}

namespace {

nlohmann::ordered_json config_json(const NetworkConfig& c) {
  nlohmann::ordered_json j;
  j["input_dim"] = c.input_dim;
  j["hidden_layers"] = c.hidden_layers;
  j["output_dim"] = c.output_dim;
  j["activation"] = to_string(c.activation);
  j["output_head"] = to_string(c.output_head);
  j["learning_rate"] = c.learning_rate;
  j["max_epochs"] = c.max_epochs;
  j["batch_size"] = c.batch_size;
  j["init_seed"] = c.init_seed;
  j["init_range"] = c.init_range;
  j["input_shift"] = c.input_shift;
  j["input_scale"] = c.input_scale;
  return j;
}

NetworkConfig config_from_json(const nlohmann::json& j) {
  NetworkConfig c;
  c.input_dim = j.at("input_dim").get<std::size_t>();
  c.hidden_layers = j.at("hidden_layers").get<std::vector<std::size_t>>();
  c.output_dim = j.at("output_dim").get<std::size_t>();
  c.activation = activation_from_string(j.at("activation").get<std::string>());
  c.output_head = output_head_from_string(j.at("output_head").get<std::string>());
  c.learning_rate = j.at("learning_rate").get<double>();
  c.max_epochs = j.at("max_epochs").get<std::size_t>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.init_seed = j.at("init_seed").get<std::uint64_t>();
  c.init_range = j.at("init_range").get<double>();
  c.input_shift = j.value("input_shift", std::vector<double>{});
  c.input_scale = j.value("input_scale", std::vector<double>{});
  return c;
}

}  // namespace

// nlohmann emits shortest round-trip text; weights are written by hand so the
// snapshot carries exactly 17 significant digits.
std::string module_to_json(const NeuralModule& m) {
  std::ostringstream out;
  out << "{\"concept_id\":" << nlohmann::json(m.concept_id()).dump()
      << ",\"frozen\":" << (m.frozen() ? "true" : "false")
      << ",\"config\":" << config_json(m.config()).dump() << ",\"weights\":[";
  const auto w = m.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ',';
    out << format_double17(w[i]);
  }
  out << "]}";
  return out.str();
}

NeuralModule module_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad module snapshot: ") + e.what());
  }
  NeuralModule m(j.at("concept_id").get<std::string>(), config_from_json(j.at("config")),
                 j.at("weights").get<std::vector<double>>());
  if (j.value("frozen", false)) m.freeze();
  return m;
}

std::string network_to_json(const ModularNetwork& network) {
  std::ostringstream out;
  out << "{\"wiring\":" << nlohmann::json(network.wiring()).dump() << ",\"leaves\":[";
  for (std::size_t i = 0; i < network.leaves().size(); ++i) {
    if (i) out << ',';
    out << module_to_json(network.leaves()[i]);
  }
  out << "],\"synthesis\":" << module_to_json(network.synthesis()) << '}';
  return out.str();
}

}  // namespace machedu
