#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advk/dataset.hpp"

namespace advk {

enum class Arch { Linear, Mlp1 };

// Desk-scale softmax classifier: either a linear map or one tanh hidden
// layer. Small enough that every gradient is written out by hand.
struct TinyClassifier {
  Arch arch = Arch::Linear;
  int dim = 2;
  int classes = 2;
  int hidden = 0;  // Mlp1 only

  Vec w1, b1;  // Linear: classes x dim. Mlp1: hidden x dim
  Vec w2, b2;  // Mlp1 only: classes x hidden

  Vec scores(const Vec& x) const;  // logits
  Vec probs(const Vec& x) const;
  int classify(const Vec& x) const;  // ties go to the lowest index
  double loss(const Vec& x, int y) const;        // softmax cross-entropy
  Vec loss_gradient(const Vec& x, int y) const;  // d loss / d input

  // Flat text format: one header line (arch, dims), then one value per line.
  std::string serialize() const;
  static TinyClassifier deserialize(const std::string& text);
};

// Numerically safe softmax; the result sums to 1 within 1e-9.
Vec softmax(const Vec& z);

struct TrainParams {
  double lr = 0.1;
  int epochs = 50;
  int batch = 16;
  std::uint64_t seed = 1;
};

struct TrainResult {
  TinyClassifier model;
  double train_accuracy = 0.0;
};

// Minibatch SGD on softmax cross-entropy with a seeded shuffle and seeded
// init. epochs = 0 returns the untouched initialization. Raises when the
// loss stops being finite, naming the epoch.
TrainResult train_sgd(const SyntheticDataset& data, Arch arch, int hidden,
                      const TrainParams& p);

}  // namespace advk
