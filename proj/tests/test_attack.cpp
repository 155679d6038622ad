#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "advk/attack.hpp"
#include "advk/classifier.hpp"

using advk::AdvCandidate;
using advk::Arch;
using advk::kLinf;
using advk::lp_distance;
using advk::LpDistinguisher;
using advk::OracleSurface;
using advk::PgdParams;
using advk::pgd_advgen;
using advk::pgd_attack;
using advk::Sample;
using advk::ScoreOracle;
using advk::TinyClassifier;
using advk::Vec;

namespace {

// Two classes over one input: class-0 logit fixed at 0, class-1 logit w*x.
TinyClassifier logistic_1d(double w) {
  TinyClassifier m;
  m.arch = Arch::Linear;
  m.dim = 1;
  m.classes = 2;
  m.w1 = {0.0, w};
  m.b1 = {0.0, 0.0};
  return m;
}

}  // namespace

TEST_CASE("lp_distance in all three norms") {
  const Vec a = {0.0, 0.0};
  const Vec b = {0.3, 0.1};
  CHECK(lp_distance(a, b, kLinf) == 0.3);
  CHECK(lp_distance(a, b, 0.0) == 2.0);
  CHECK(lp_distance(a, b, 2.0) == doctest::Approx(std::sqrt(0.10)).epsilon(1e-12));
  CHECK(lp_distance(a, a, 2.0) == 0.0);

  CHECK_THROWS_WITH_AS(lp_distance({0.0}, {0.0, 0.0}, 2.0),
                       "lp_distance: dimension mismatch", std::invalid_argument);
  CHECK_THROWS_WITH_AS(lp_distance(a, b, 3.0),
                       "lp_distance: unsupported norm order",
                       std::invalid_argument);
}

TEST_CASE("the detector fires only strictly beyond eps") {
  const LpDistinguisher d{kLinf, 0.3, {0.0, 0.0}};
  CHECK(d({0.3, 0.0}) == 0);  // boundary stays accepted
  CHECK(d({0.30001, 0.0}) == 1);
  CHECK(d({0.0, 0.0}) == 0);

  const LpDistinguisher e2{2.0, 0.5, {0.5, 0.5}};
  CHECK(e2({0.5, 1.0}) == 0);
  CHECK(e2({0.9, 0.9}) == 1);
}

TEST_CASE("zero steps or zero radius leave the input alone") {
  const TinyClassifier m = logistic_1d(2.0);
  PgdParams p;
  p.steps = 0;
  CHECK(pgd_attack(m, {0.5}, 1, p) == Vec{0.5});
  p.steps = 40;
  p.eps = 0.0;
  CHECK(pgd_attack(m, {0.5}, 1, p) == Vec{0.5});
}

TEST_CASE("one untargeted step walks against the true class") {
  const TinyClassifier m = logistic_1d(2.0);
  PgdParams p;
  p.steps = 1;
  p.alpha = 0.1;
  // Loss of class 1 falls in x, so the ascent step is -alpha.
  CHECK(pgd_attack(m, {0.5}, 1, p)[0] == doctest::Approx(0.4).epsilon(1e-12));
  // Near the box edge the step is cut off at 0.
  CHECK(pgd_attack(m, {0.05}, 1, p)[0] == 0.0);
}

TEST_CASE("a targeted step walks toward the target class") {
  const TinyClassifier m = logistic_1d(2.0);
  PgdParams p;
  p.steps = 1;
  p.alpha = 0.1;
  p.target = 1;
  CHECK(pgd_attack(m, {0.5}, 0, p)[0] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("many steps stay inside the eps ball and the unit box") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ux(0.05, 0.95);
  for (int trial = 0; trial < 50; ++trial) {
    TinyClassifier m;
    m.arch = Arch::Linear;
    m.dim = 2;
    m.classes = 3;
    m.w1 = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    m.b1 = {u(rng), u(rng), u(rng)};
    const Vec x0 = {ux(rng), ux(rng)};
    PgdParams p;
    p.eps = 0.1;
    p.alpha = 0.03;
    p.steps = 20;
    const Vec x = pgd_attack(m, x0, trial % 3, p);
    CHECK(lp_distance(x, x0, kLinf) <= 0.1 + 1e-12);
    for (double v : x) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("pgd parameter validation") {
  const TinyClassifier m = logistic_1d(1.0);
  PgdParams p;
  p.eps = -0.1;
  CHECK_THROWS_WITH_AS(pgd_attack(m, {0.5}, 0, p), "pgd: eps must be >= 0",
                       std::invalid_argument);
  p = PgdParams{};
  p.alpha = -1.0;
  CHECK_THROWS_WITH_AS(pgd_attack(m, {0.5}, 0, p), "pgd: alpha must be >= 0",
                       std::invalid_argument);
  p = PgdParams{};
  p.steps = -1;
  CHECK_THROWS_WITH_AS(pgd_attack(m, {0.5}, 0, p), "pgd: steps must be >= 0",
                       std::invalid_argument);
  p = PgdParams{};
  p.target = 2;
  CHECK_THROWS_WITH_AS(pgd_attack(m, {0.5}, 0, p),
                       "pgd: target label out of range", std::invalid_argument);
}

TEST_CASE("candidate generation names each missing oracle") {
  const TinyClassifier m = logistic_1d(2.0);
  const Sample s{{0.5}, 1};

  OracleSurface surface;
  CHECK_THROWS_WITH_AS(pgd_advgen(surface, PgdParams{}),
                       "pgd needs the model parameters oracle to compute gradients",
                       std::runtime_error);
  surface.model = &m;
  CHECK_THROWS_WITH_AS(
      pgd_advgen(surface, PgdParams{}),
      "pgd needs training information (loss) to know which objective to climb",
      std::runtime_error);
  surface.loss_available = true;
  CHECK_THROWS_WITH_AS(pgd_advgen(surface, PgdParams{}),
                       "pgd needs a benign input oracle to start from",
                       std::runtime_error);
  surface.input = s;
  const AdvCandidate cand = pgd_advgen(surface, PgdParams{});
  CHECK(cand.y == 1);
  CHECK(cand.self_check == 0);  // no replica wired in
}

TEST_CASE("the attacker's own replica clears in-ball candidates") {
  const TinyClassifier m = logistic_1d(2.0);
  const Sample s{{0.5}, 1};
  const LpDistinguisher replica{kLinf, 0.3, s.x};

  OracleSurface surface;
  surface.model = &m;
  surface.loss_available = true;
  surface.input = s;
  surface.self_dist = &replica;

  PgdParams p;
  p.eps = 0.3;
  const AdvCandidate cand = pgd_advgen(surface, p);
  CHECK(cand.self_check == 0);
  CHECK(lp_distance(cand.x, s.x, kLinf) <= 0.3 + 1e-12);

  PgdParams targeted = p;
  targeted.target = 0;
  CHECK(pgd_advgen(surface, targeted).y == 0);
}

TEST_CASE("score oracle spends its allowance and then goes silent") {
  const TinyClassifier m = logistic_1d(2.0);
  ScoreOracle oracle{&m, 2};
  CHECK(oracle.query({0.5}).size() == 2);
  CHECK(oracle.query({0.5}).size() == 2);
  CHECK(oracle.query({0.5}).empty());
  ScoreOracle broke{&m, 0};
  CHECK(broke.query({0.5}).empty());
}
