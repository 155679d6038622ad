#include "advk/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

namespace advk {

double empirical_zeta(const std::vector<Vec>& adversarial,
                      const std::vector<Vec>& benign,
                      const std::function<int(const Vec&)>& distinguisher) {
  if (adversarial.empty() || benign.empty())
    throw std::invalid_argument("empirical_zeta needs non-empty sets");
  auto rate = [&distinguisher](const std::vector<Vec>& set) {
    long fired = 0;
    for (const Vec& x : set) fired += distinguisher(x);
    return static_cast<double>(fired) / static_cast<double>(set.size());
  };
  return std::abs(rate(adversarial) - rate(benign));
}

bool stealth_check(double zeta, int n, double c) {
  if (n < 2) throw std::invalid_argument("stealth_check needs n >= 2");
  if (c <= 0.0) throw std::invalid_argument("stealth_check needs c > 0");
  return zeta <= c * std::log(static_cast<double>(n)) / static_cast<double>(n);
}

double rps(double attack_esr, double benign_esr) {
  if (!(attack_esr >= 0.0 && attack_esr <= 1.0))
    throw std::invalid_argument("rps: attack esr outside [0,1]");
  if (!(benign_esr >= 0.0 && benign_esr <= 1.0))
    throw std::invalid_argument("rps: benign esr outside [0,1]");
  return attack_esr * attack_esr - benign_esr * benign_esr;
}

std::vector<std::vector<double>> rps_grid(double step) {
  if (!(step > 0.0 && step <= 1.0))
    throw std::invalid_argument("rps_grid: step outside (0,1]");
  const double cells = 1.0 / step;
  const long k = std::lround(cells);
  if (k < 1 || std::abs(static_cast<double>(k) * step - 1.0) > 1e-12)
    throw std::invalid_argument("rps_grid: step must divide 1 evenly");
  std::vector<std::vector<double>> grid(static_cast<std::size_t>(k) + 1);
  for (long i = 0; i <= k; ++i) {
    const double a = i == k ? 1.0 : static_cast<double>(i) * step;
    auto& row = grid[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(k) + 1);
    for (long j = 0; j <= k; ++j) {
      const double b = j == k ? 1.0 : static_cast<double>(j) * step;
      row[static_cast<std::size_t>(j)] = rps(a, b);
    }
  }
  return grid;
}

namespace {

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v, bool sample) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(acc / (sample ? n - 1.0 : n));
}

}  // namespace

ScoreReport recompute_scores(const std::vector<AttackRecord>& records) {
  ScoreReport report;
  report.rows.reserve(records.size());

  struct Bucket {
    std::vector<double> benign, esr, score;
  };
  std::map<std::tuple<std::string, std::string, std::string, bool>, Bucket>
      groups;

  for (const AttackRecord& rec : records) {
    ScoreRow row;
    row.attack = rec.attack;
    row.variant = rec.variant;
    row.model = rec.model;
    row.benign_esr = rec.benign_esr_pct;
    row.attack_esr = rec.attack_esr_pct;
    row.reported_score = rec.reported_score;
    if (rec.benign_esr_pct) {
      row.recomputed_score =
          rps(rec.attack_esr_pct / 100.0, *rec.benign_esr_pct / 100.0);
      if (rec.reported_score)
        row.delta = std::abs(*row.recomputed_score - *rec.reported_score);
    }
    if (rec.unreliable)
      row.flag = "unreliable";
    else if (!row.benign_esr)
      row.flag = "no_benign";
    else if (!row.reported_score)
      row.flag = "no_report";
    else
      row.flag = *row.delta <= kScoreTolerance ? "ok" : "mismatch";
    report.rows.push_back(row);

    if (!rec.unreliable && rec.benign_esr_pct) {
      Bucket& b = groups[{rec.attack, rec.variant, rec.dataset, rec.defended}];
      b.benign.push_back(*rec.benign_esr_pct);
      b.esr.push_back(rec.attack_esr_pct);
      b.score.push_back(*row.recomputed_score);
    }
  }

  for (const auto& [key, b] : groups) {
    if (b.esr.size() < 2) continue;
    GroupRow g;
    g.attack = std::get<0>(key);
    g.variant = std::get<1>(key);
    g.dataset = std::get<2>(key);
    g.defended = std::get<3>(key);
    g.count = static_cast<int>(b.esr.size());
    g.mean_benign = mean(b.benign);
    g.mean_esr = mean(b.esr);
    g.mean_score = mean(b.score);
    g.std_benign_pop = stddev(b.benign, false);
    g.std_esr_pop = stddev(b.esr, false);
    g.std_score_pop = stddev(b.score, false);
    g.std_esr_sample = stddev(b.esr, true);
    g.std_score_sample = stddev(b.score, true);
    report.groups.push_back(std::move(g));
  }
  return report;
}

std::string report_to_csv(const ScoreReport& report) {
  std::string out =
      "attack,variant,model,benign_esr,attack_esr,recomputed_score,"
      "reported_score,delta,flag\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  auto opt = [&num](const std::optional<double>& v) {
    return v ? num(*v) : std::string();
  };

  for (const ScoreRow& r : report.rows) {
    out += r.attack + "," + r.variant + "," + r.model + "," +
           opt(r.benign_esr) + "," + num(r.attack_esr) + "," +
           opt(r.recomputed_score) + "," + opt(r.reported_score) + "," +
           opt(r.delta) + "," + r.flag + "\n";
  }
  for (const GroupRow& g : report.groups) {
    out += g.attack + "," + g.variant + ",mean," + num(g.mean_benign) + "," +
           num(g.mean_esr) + "," + num(g.mean_score) + ",,,group\n";
    out += g.attack + "," + g.variant + ",stddev," + num(g.std_benign_pop) +
           "," + num(g.std_esr_pop) + "," + num(g.std_score_pop) +
           ",,,group\n";
  }
  return out;
}

}  // namespace advk
