#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "advk/classifier.hpp"
#include "advk/dataset.hpp"

using advk::Arch;
using advk::gaussian_blobs;
using advk::Sample;
using advk::softmax;
using advk::SyntheticDataset;
using advk::TinyClassifier;
using advk::TrainParams;
using advk::TrainResult;
using advk::Vec;

namespace {

TinyClassifier zero_linear(int dim, int classes) {
  TinyClassifier m;
  m.arch = Arch::Linear;
  m.dim = dim;
  m.classes = classes;
  m.w1.assign(static_cast<std::size_t>(classes * dim), 0.0);
  m.b1.assign(static_cast<std::size_t>(classes), 0.0);
  return m;
}

// Central finite difference of the loss in every input coordinate.
Vec fd_gradient(const TinyClassifier& m, const Vec& x, int y, double h) {
  Vec g(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    Vec lo = x, hi = x;
    lo[d] -= h;
    hi[d] += h;
    g[d] = (m.loss(hi, y) - m.loss(lo, y)) / (2.0 * h);
  }
  return g;
}

double rel_err(const Vec& a, const Vec& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
}

TinyClassifier random_model(Arch arch, int dim, int classes, int hidden,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TinyClassifier m;
  m.arch = arch;
  m.dim = dim;
  m.classes = classes;
  m.hidden = arch == Arch::Mlp1 ? hidden : 0;
  auto fill = [&](Vec& v, int n) {
    v.resize(static_cast<std::size_t>(n));
    for (double& d : v) d = u(rng);
  };
  if (arch == Arch::Linear) {
    fill(m.w1, classes * dim);
    fill(m.b1, classes);
  } else {
    fill(m.w1, hidden * dim);
    fill(m.b1, hidden);
    fill(m.w2, classes * hidden);
    fill(m.b2, classes);
  }
  return m;
}

}  // namespace

TEST_CASE("softmax sums to one and survives large logits") {
  const Vec p = softmax({1.0, 2.0, 3.0});
  CHECK(std::fabs(p[0] + p[1] + p[2] - 1.0) <= 1e-9);
  CHECK(p[2] > p[1]);
  CHECK(p[1] > p[0]);

  const Vec q = softmax({1000.0, 1000.0, 500.0});
  CHECK(std::isfinite(q[0]));
  CHECK(std::fabs(q[0] - 0.5) <= 1e-9);
  CHECK(q[2] <= 1e-12);

  CHECK_THROWS_AS(softmax({}), std::invalid_argument);
}

TEST_CASE("classification ties break toward the lowest index") {
  TinyClassifier m = zero_linear(2, 3);
  m.b1 = {0.4, 0.4, 0.2};
  CHECK(m.classify({0.5, 0.5}) == 0);
  m.b1 = {0.1, 0.4, 0.4};
  CHECK(m.classify({0.5, 0.5}) == 1);
}

TEST_CASE("zero weights mean zero input gradient") {
  TinyClassifier m = zero_linear(2, 2);
  const Vec g = m.loss_gradient({0.3, 0.7}, 0);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
}

TEST_CASE("one dimensional logistic slope points downhill") {
  // Two classes over one input, class-1 logit w*x: the loss of the true
  // class 1 falls as x grows, so the gradient must be negative.
  TinyClassifier m;
  m.arch = Arch::Linear;
  m.dim = 1;
  m.classes = 2;
  m.w1 = {0.0, 2.0};
  m.b1 = {0.0, 0.0};
  const double x = 0.3;
  const Vec g = m.loss_gradient({x}, 1);
  const double sigma = 1.0 / (1.0 + std::exp(-2.0 * x));
  CHECK(g[0] == doctest::Approx((sigma - 1.0) * 2.0).epsilon(1e-12));
  CHECK(g[0] < 0.0);
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    for (Arch arch : {Arch::Linear, Arch::Mlp1}) {
      TinyClassifier m = random_model(arch, 3, 3, 5, rng);
      Vec x = {ux(rng), ux(rng), ux(rng)};
      const int y = trial % 3;
      const Vec g = m.loss_gradient(x, y);
      const Vec fd = fd_gradient(m, x, y, 1e-5);
      CHECK(rel_err(g, fd) <= 1e-5);
    }
  }
}

TEST_CASE("input and label validation") {
  TinyClassifier m = zero_linear(2, 2);
  CHECK_THROWS_WITH_AS(m.scores({0.1}), "input dimension mismatch",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(m.loss({0.1, 0.2}, 2), "label out of range",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(m.loss_gradient({0.1, 0.2}, -1), "label out of range",
                       std::invalid_argument);
}

TEST_CASE("serialization round-trips both architectures exactly") {
  std::mt19937_64 rng(11);
  for (Arch arch : {Arch::Linear, Arch::Mlp1}) {
    const TinyClassifier m = random_model(arch, 2, 3, 4, rng);
    const TinyClassifier back = TinyClassifier::deserialize(m.serialize());
    CHECK(back.arch == m.arch);
    CHECK(back.dim == m.dim);
    CHECK(back.classes == m.classes);
    CHECK(back.hidden == m.hidden);
    CHECK(back.w1 == m.w1);
    CHECK(back.b1 == m.b1);
    CHECK(back.w2 == m.w2);
    CHECK(back.b2 == m.b2);
  }
}

TEST_CASE("deserialize rejects malformed text") {
  CHECK_THROWS_WITH_AS(TinyClassifier::deserialize(""),
                       "bad classifier header", std::invalid_argument);
  CHECK_THROWS_WITH_AS(TinyClassifier::deserialize("cnn 2 2 0\n"),
                       "unknown architecture: cnn", std::invalid_argument);
  CHECK_THROWS_WITH_AS(TinyClassifier::deserialize("linear 0 2 0\n"),
                       "bad classifier dimensions", std::invalid_argument);
  CHECK_THROWS_WITH_AS(TinyClassifier::deserialize("mlp1 2 2 0\n"),
                       "bad classifier dimensions", std::invalid_argument);
  CHECK_THROWS_WITH_AS(TinyClassifier::deserialize("linear 2 2 0\n1\n2\n"),
                       "truncated classifier data", std::invalid_argument);
  const std::string good = zero_linear(2, 2).serialize();
  CHECK_THROWS_WITH_AS(TinyClassifier::deserialize(good + "9\n"),
                       "trailing classifier data", std::invalid_argument);
}

TEST_CASE("zero epochs returns the seeded initialization") {
  const SyntheticDataset data = gaussian_blobs(32, advk::DataRole::Train, 3);
  TrainParams p;
  p.epochs = 0;
  p.seed = 99;
  const TrainResult a = advk::train_sgd(data, Arch::Linear, 0, p);
  const TrainResult b = advk::train_sgd(data, Arch::Linear, 0, p);
  CHECK(a.model.w1 == b.model.w1);
  CHECK(a.model.b1 == b.model.b1);
  // Uniform(-0.5, 0.5) init: nothing should sit exactly at zero.
  for (double w : a.model.w1) CHECK(w != 0.0);
}

TEST_CASE("training is deterministic in the seed") {
  const SyntheticDataset data = gaussian_blobs(64, advk::DataRole::Train, 5);
  TrainParams p;
  p.epochs = 10;
  const TrainResult a = advk::train_sgd(data, Arch::Linear, 0, p);
  const TrainResult b = advk::train_sgd(data, Arch::Linear, 0, p);
  CHECK(a.model.serialize() == b.model.serialize());
  CHECK(a.train_accuracy == b.train_accuracy);
}

TEST_CASE("both architectures separate the blobs") {
  const SyntheticDataset data = gaussian_blobs(256, advk::DataRole::Train, 42);
  const TrainResult lin = advk::train_sgd(data, Arch::Linear, 0, TrainParams{});
  CHECK(lin.train_accuracy >= 0.95);
  const TrainResult mlp = advk::train_sgd(data, Arch::Mlp1, 8, TrainParams{});
  CHECK(mlp.train_accuracy >= 0.95);
}

TEST_CASE("divergence is reported with the epoch") {
  // The loss itself is floored, so divergence means the weights went
  // non-finite. An unbounded step does that right after the first batch.
  const SyntheticDataset data = gaussian_blobs(64, advk::DataRole::Train, 5);
  TrainParams p;
  p.lr = std::numeric_limits<double>::infinity();
  p.epochs = 1;
  try {
    advk::train_sgd(data, Arch::Linear, 0, p);
    FAIL("expected divergence");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("epoch") != std::string::npos);
    CHECK(std::string(e.what()).find("loss is not finite") != std::string::npos);
  }
}

TEST_CASE("train_sgd validates its arguments") {
  const SyntheticDataset data = gaussian_blobs(8, advk::DataRole::Train, 1);
  TrainParams p;
  CHECK_THROWS_WITH_AS(advk::train_sgd(SyntheticDataset{}, Arch::Linear, 0, p),
                       "empty training set", std::invalid_argument);
  p.batch = 0;
  CHECK_THROWS_WITH_AS(advk::train_sgd(data, Arch::Linear, 0, p),
                       "batch size must be positive", std::invalid_argument);
  p.batch = 16;
  p.epochs = -1;
  CHECK_THROWS_WITH_AS(advk::train_sgd(data, Arch::Linear, 0, p),
                       "epochs must be non-negative", std::invalid_argument);
  p.epochs = 1;
  CHECK_THROWS_WITH_AS(advk::train_sgd(data, Arch::Mlp1, 0, p),
                       "mlp1 needs a positive hidden width",
                       std::invalid_argument);
}

TEST_CASE("gaussian blobs stay in the unit square with alternating labels") {
  const SyntheticDataset d = gaussian_blobs(101, advk::DataRole::Shifted, 9);
  REQUIRE(d.samples.size() == 101);
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const Sample& s = d.samples[i];
    CHECK(s.y == static_cast<int>(i % 2));
    for (double v : s.x) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  CHECK_THROWS_AS(gaussian_blobs(0, advk::DataRole::Train, 1),
                  std::invalid_argument);
}
