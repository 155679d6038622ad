#include "advk/attack.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace advk {

double lp_distance(const Vec& a, const Vec& b, double p) {
  if (a.size() != b.size())
    throw std::invalid_argument("lp_distance: dimension mismatch");
  if (p == 0.0) {
    double count = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) count += 1.0;
    return count;
  }
  if (p == 2.0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  if (p == kLinf) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      best = std::max(best, std::abs(a[i] - b[i]));
    return best;
  }
  throw std::invalid_argument("lp_distance: unsupported norm order");
}

Vec pgd_attack(const TinyClassifier& model, const Vec& x0, int label,
               const PgdParams& params) {
  if (params.eps < 0.0) throw std::invalid_argument("pgd: eps must be >= 0");
  if (params.alpha < 0.0) throw std::invalid_argument("pgd: alpha must be >= 0");
  if (params.steps < 0) throw std::invalid_argument("pgd: steps must be >= 0");
  if (params.target && (*params.target < 0 || *params.target >= model.classes))
    throw std::invalid_argument("pgd: target label out of range");

  const bool targeted = params.target.has_value();
  const int grad_label = targeted ? *params.target : label;
  const double direction = targeted ? -1.0 : 1.0;

  Vec x = x0;
  for (int step = 0; step < params.steps; ++step) {
    const Vec g = model.loss_gradient(x, grad_label);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = g[i] > 0.0 ? 1.0 : (g[i] < 0.0 ? -1.0 : 0.0);
      x[i] += direction * params.alpha * s;
      x[i] = std::clamp(x[i], x0[i] - params.eps, x0[i] + params.eps);
      // the clamp bounds are rounded, so the measured offset can still exceed
      // eps by an ulp; back off until the point passes the same distance check
      // a detector applies
      while (std::abs(x[i] - x0[i]) > params.eps)
        x[i] = std::nextafter(x[i], x0[i]);
      x[i] = std::clamp(x[i], 0.0, 1.0);
    }
  }
  return x;
}

AdvCandidate pgd_advgen(const OracleSurface& surface, const PgdParams& params) {
  if (surface.model == nullptr)
    throw std::runtime_error(
        "pgd needs the model parameters oracle to compute gradients");
  if (!surface.loss_available)
    throw std::runtime_error(
        "pgd needs training information (loss) to know which objective to climb");
  if (!surface.input)
    throw std::runtime_error("pgd needs a benign input oracle to start from");

  AdvCandidate cand;
  cand.x = pgd_attack(*surface.model, surface.input->x, surface.input->y, params);
  cand.y = params.target ? *params.target : surface.input->y;
  cand.self_check = surface.self_dist ? (*surface.self_dist)(cand.x) : 0;
  return cand;
}

}  // namespace advk
