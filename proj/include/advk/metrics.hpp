#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "advk/dataset.hpp"
#include "advk/records.hpp"

namespace advk {

// Recomputed scores must land within this distance of the published
// 3-decimal values (rounding slack).
inline constexpr double kScoreTolerance = 0.0015;

// Gap between the detector's firing rates on adversarial and benign
// inputs; 0 means the two sets look identical to it.
double empirical_zeta(const std::vector<Vec>& adversarial,
                      const std::vector<Vec>& benign,
                      const std::function<int(const Vec&)>& distinguisher);

// True when zeta is within the c*ln(n)/n envelope, n = |A union B|.
bool stealth_check(double zeta, int n, double c = 1.0);

// Relative performance score: attack success weighed against how badly
// the model already does on clean data. Inputs in [0,1].
double rps(double attack_esr, double benign_esr);

// Score surface sampled on a regular lattice: grid[i][j] holds
// rps(i*step, j*step). step must divide 1 evenly.
std::vector<std::vector<double>> rps_grid(double step);

struct ScoreRow {
  std::string attack;
  std::string variant;
  std::string model;
  std::optional<double> benign_esr;  // percent
  double attack_esr = 0.0;           // percent
  std::optional<double> recomputed_score;
  std::optional<double> reported_score;
  std::optional<double> delta;
  std::string flag;  // ok | mismatch | unreliable | no_benign | no_report
};

// Aggregates over one published table: reliable records of one
// (attack, variant, dataset, defended) group that carry a benign rate.
struct GroupRow {
  std::string attack;
  std::string variant;
  std::string dataset;
  bool defended = false;
  int count = 0;
  double mean_benign = 0.0;
  double mean_esr = 0.0;
  double mean_score = 0.0;
  double std_benign_pop = 0.0;
  double std_esr_pop = 0.0;
  double std_score_pop = 0.0;
  double std_esr_sample = 0.0;
  double std_score_sample = 0.0;
};

struct ScoreReport {
  std::vector<ScoreRow> rows;
  std::vector<GroupRow> groups;
};

ScoreReport recompute_scores(const std::vector<AttackRecord>& records);

// CSV with the fixed header, 4 fractional digits, LF line endings.
// Group aggregates append as model = "mean" / "stddev" rows (population
// deviation) flagged "group".
std::string report_to_csv(const ScoreReport& report);

}  // namespace advk
