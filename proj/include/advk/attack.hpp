#pragma once

#include <optional>
#include <string>

#include "advk/classifier.hpp"
#include "advk/dataset.hpp"

namespace advk {

// p-norm distance between points of equal dimension. p is 0, 2, or
// infinity (pass kLinf). l0 counts coordinates that differ exactly.
inline constexpr double kLinf = -1.0;

double lp_distance(const Vec& a, const Vec& b, double p);

// Detector that accepts a point iff it stays within eps of a fixed
// reference under the chosen norm. Returns 1 (detected) when the
// distance exceeds eps, else 0.
struct LpDistinguisher {
  double p = kLinf;
  double eps = 0.3;
  Vec reference;

  int operator()(const Vec& x) const {
    return lp_distance(x, reference, p) > eps ? 1 : 0;
  }
};

struct PgdParams {
  double eps = 0.3;
  double alpha = 0.05;
  int steps = 40;
  std::optional<int> target;  // empty: untargeted
};

// Iterated sign-gradient ascent on the classifier loss, projected onto
// the l-infinity ball of radius eps around x0 and the unit box. With a
// target label the same step descends the target's loss instead.
Vec pgd_attack(const TinyClassifier& model, const Vec& x0, int label,
               const PgdParams& params);

// What the attacker actually holds when generating a candidate. Missing
// pieces make pgd_advgen fail loudly rather than silently degrade.
struct OracleSurface {
  const TinyClassifier* model = nullptr;  // white-box parameter access
  bool loss_available = false;            // knows the training loss
  std::optional<Sample> input;            // benign point to perturb
  const LpDistinguisher* self_dist = nullptr;  // detector replica, optional
};

struct AdvCandidate {
  Vec x;
  int y = 0;        // label claimed with the candidate
  int self_check = 0;  // attacker's own detector verdict, 0 when absent
};

AdvCandidate pgd_advgen(const OracleSurface& surface, const PgdParams& params);

// Score access with a finite query allowance. Once the allowance is
// spent, query() returns an empty vector instead of scores.
struct ScoreOracle {
  const TinyClassifier* model = nullptr;
  long remaining = 0;

  Vec query(const Vec& x) {
    if (remaining <= 0) return {};
    --remaining;
    return model->scores(x);
  }
};

}  // namespace advk
