#include "wdne/mlp.hpp"

#include "wdne/errors.hpp"
#include "wdne/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wdne {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_input(const MlpModel& model, std::span<const double> x) {
  if (x.size() != model.inputs)
    throw DataError("network expects " + std::to_string(model.inputs) +
                    " inputs, got " + std::to_string(x.size()));
}

// Hidden activations and output probabilities in caller-provided buffers.
// Returns the log-sum-exp-stable cross-entropy pieces via `logits`.
void forward_pass(const MlpModel& model, std::span<const double> x,
                  Vector& hidden, Vector& logits, Vector& probs) {
  hidden.resize(model.hidden);
  logits.resize(model.outputs);
  probs.resize(model.outputs);

  const double* w1 = model.w1.data();
  for (std::size_t k = 0; k < model.hidden; ++k) {
    double net = model.b1[k];
    const double* row = w1 + k * model.inputs;
    for (std::size_t i = 0; i < model.inputs; ++i) net += row[i] * x[i];
    hidden[k] = sigmoid(net);
  }

  const double* w2 = model.w2.data();
  for (std::size_t o = 0; o < model.outputs; ++o) {
    double net = model.b2[o];
    const double* row = w2 + o * model.hidden;
    for (std::size_t k = 0; k < model.hidden; ++k) net += row[k] * hidden[k];
    logits[o] = net;
  }

  const double peak = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (std::size_t o = 0; o < model.outputs; ++o) {
    probs[o] = std::exp(logits[o] - peak);
    z += probs[o];
  }
  for (double& p : probs) p /= z;
}

} // namespace

void MlpConfig::validate() const {
  if (inputs < 1 || outputs < 1)
    throw ConfigError("network needs at least one input and one output");
  if (size_offset < 1 || size_offset > 10)
    throw ConfigError("hidden size offset must be in [1, 10], got " +
                      std::to_string(size_offset));
  if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
}

std::size_t hidden_size(std::size_t n, std::size_t m, int a) {
  if (n < 1 || m < 1) throw ConfigError("hidden_size requires n, m >= 1");
  if (a < 1 || a > 10)
    throw ConfigError("hidden size offset must be in [1, 10], got " +
                      std::to_string(a));
  const double root = std::sqrt(static_cast<double>(n + m));
  return static_cast<std::size_t>(std::floor(root + 0.5)) +
         static_cast<std::size_t>(a);
}

MlpModel init(const MlpConfig& config) {
  config.validate();
  MlpModel model;
  model.inputs = config.inputs;
  model.outputs = config.outputs;
  model.hidden = hidden_size(config.inputs, config.outputs, config.size_offset);
  model.w1.resize(model.hidden * model.inputs);
  model.b1.resize(model.hidden);
  model.w2.resize(model.outputs * model.hidden);
  model.b2.resize(model.outputs);

  rng::Engine g(rng::mix(config.seed, 1));
  const double r1 = 1.0 / std::sqrt(static_cast<double>(model.inputs));
  for (double& w : model.w1) w = rng::uniform_range(g, -r1, r1);
  for (double& w : model.b1) w = rng::uniform_range(g, -r1, r1);
  const double r2 = 1.0 / std::sqrt(static_cast<double>(model.hidden));
  for (double& w : model.w2) w = rng::uniform_range(g, -r2, r2);
  for (double& w : model.b2) w = rng::uniform_range(g, -r2, r2);
  return model;
}

Vector forward(const MlpModel& model, std::span<const double> x) {
  check_input(model, x);
  Vector hidden, logits, probs;
  forward_pass(model, x, hidden, logits, probs);
  return probs;
}

int predict(const MlpModel& model, std::span<const double> x) {
  Vector probs = forward(model, x);
  return static_cast<int>(
      std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double model_accuracy(const MlpModel& model, const DataTable& table) {
  if (table.n() == 0) throw ConfigError("accuracy over an empty table");
  std::size_t hits = 0;
  Vector hidden, logits, probs;
  for (std::size_t i = 0; i < table.n(); ++i) {
    forward_pass(model, table.features.row(i), hidden, logits, probs);
    const int guess = static_cast<int>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    if (guess == table.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(table.n());
}

void Gradients::resize(const MlpModel& model) {
  w1.assign(model.w1.size(), 0.0);
  b1.assign(model.b1.size(), 0.0);
  w2.assign(model.w2.size(), 0.0);
  b2.assign(model.b2.size(), 0.0);
}

double loss_and_gradients(const MlpModel& model, std::span<const double> x,
                          int label, Gradients& out) {
  check_input(model, x);
  if (label < 0 || static_cast<std::size_t>(label) >= model.outputs)
    throw DataError("label " + std::to_string(label) + " out of range");
  out.resize(model);

  Vector hidden, logits, probs;
  forward_pass(model, x, hidden, logits, probs);

  const double peak = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - peak);
  const double loss = -(logits[static_cast<std::size_t>(label)] - peak - std::log(z));

  // output delta: p - y
  Vector delta2(model.outputs);
  for (std::size_t o = 0; o < model.outputs; ++o)
    delta2[o] = probs[o] - (static_cast<int>(o) == label ? 1.0 : 0.0);

  for (std::size_t o = 0; o < model.outputs; ++o) {
    const double d = delta2[o];
    double* g2 = out.w2.data() + o * model.hidden;
    for (std::size_t k = 0; k < model.hidden; ++k) g2[k] = d * hidden[k];
    out.b2[o] = d;
  }

  for (std::size_t k = 0; k < model.hidden; ++k) {
    double back = 0.0;
    for (std::size_t o = 0; o < model.outputs; ++o)
      back += delta2[o] * model.w2[o * model.hidden + k];
    const double d = back * hidden[k] * (1.0 - hidden[k]);
    double* g1 = out.w1.data() + k * model.inputs;
    for (std::size_t i = 0; i < model.inputs; ++i) g1[i] = d * x[i];
    out.b1[k] = d;
  }
  return loss;
}

TrainResult train(MlpModel model, const DataTable& train_set,
                  const DataTable& validation, const MlpConfig& config) {
  config.validate();
  if (train_set.n() == 0) throw ConfigError("empty training set");
  if (validation.n() == 0) throw ConfigError("empty validation set");
  if (train_set.dim() != model.inputs)
    throw DataError("training data dimension " + std::to_string(train_set.dim()) +
                    " does not match network inputs " + std::to_string(model.inputs));

  TrainResult result;
  result.model = model;
  result.best_epoch = 0;
  double best_acc = model_accuracy(model, validation);
  result.history.push_back({0, 0.0, best_acc});

  rng::Engine g(rng::mix(config.seed, 2));
  std::vector<std::size_t> order(train_set.n());
  std::iota(order.begin(), order.end(), 0);

  Gradients grad;
  std::size_t stale = 0;
  const double lr = config.learning_rate;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (stale >= config.patience) break;

    rng::shuffle(order, g);
    double loss_sum = 0.0;
    for (std::size_t idx : order) {
      const double loss = loss_and_gradients(model, train_set.features.row(idx),
                                             train_set.labels[idx], grad);
      if (!std::isfinite(loss))
        throw NumericError("training diverged at epoch " + std::to_string(epoch) +
                           " (learning rate " + std::to_string(lr) + ")");
      loss_sum += loss;
      for (std::size_t i = 0; i < model.w1.size(); ++i) model.w1[i] -= lr * grad.w1[i];
      for (std::size_t i = 0; i < model.b1.size(); ++i) model.b1[i] -= lr * grad.b1[i];
      for (std::size_t i = 0; i < model.w2.size(); ++i) model.w2[i] -= lr * grad.w2[i];
      for (std::size_t i = 0; i < model.b2.size(); ++i) model.b2[i] -= lr * grad.b2[i];
    }

    const double val_acc = model_accuracy(model, validation);
    result.history.push_back(
        {epoch, loss_sum / static_cast<double>(train_set.n()), val_acc});
    if (val_acc > best_acc) {
      best_acc = val_acc;
      result.model = model;
      result.best_epoch = epoch;
      stale = 0;
    } else {
      ++stale;
    }
  }
  return result;
}

} // namespace wdne
