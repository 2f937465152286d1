#pragma once

#include "wdne/dataset.hpp"
#include "wdne/matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace wdne {

struct MlpConfig {
  std::size_t inputs = 1;
  std::size_t outputs = 2;
  int size_offset = 4; // the additive constant in the hidden sizing rule
  double learning_rate = 0.05;
  std::size_t max_epochs = 500;
  std::size_t patience = 30;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Hidden neuron count: round-half-up(sqrt(n + m)) + a, with a in [1, 10].
std::size_t hidden_size(std::size_t n, std::size_t m, int a);

/// Three-layer network: logistic sigmoid hidden layer, softmax output.
struct MlpModel {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::size_t outputs = 0;
  Vector w1; // hidden x inputs, row-major
  Vector b1; // hidden
  Vector w2; // outputs x hidden, row-major
  Vector b2; // outputs

  bool operator==(const MlpModel&) const = default;
};

/// Parameters drawn uniformly from [-1/sqrt(fan_in), +1/sqrt(fan_in)].
MlpModel init(const MlpConfig& config);

/// Class probabilities (softmax), summing to 1.
Vector forward(const MlpModel& model, std::span<const double> x);

/// argmax of forward; ties go to the lowest class index.
int predict(const MlpModel& model, std::span<const double> x);

/// Fraction of rows predicted correctly.
double model_accuracy(const MlpModel& model, const DataTable& table);

struct Gradients {
  Vector w1, b1, w2, b2;
  void resize(const MlpModel& model);
};

/// Cross-entropy loss of one example and its backprop gradients.
double loss_and_gradients(const MlpModel& model, std::span<const double> x,
                          int label, Gradients& out);

struct EpochStats {
  std::size_t epoch = 0;    // 0 is the untrained snapshot
  double mean_loss = 0.0;   // over the epoch's examples (0 for epoch 0)
  double val_accuracy = 0.0;
};

struct TrainResult {
  MlpModel model; // snapshot with the best validation accuracy
  std::vector<EpochStats> history;
  std::size_t best_epoch = 0;
};

/// Plain per-example SGD on cross-entropy with validation-based early
/// stopping: training stops once `patience` consecutive epochs bring no
/// validation improvement, or at max_epochs.
TrainResult train(MlpModel model, const DataTable& train_set,
                  const DataTable& validation, const MlpConfig& config);

} // namespace wdne
