#include "advk/game.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace advk {

int evaluate_untargeted(int y, int r) { return r != y ? 1 : 0; }

int evaluate_targeted(int y_t, int r) { return r == y_t ? 1 : 0; }

namespace {

void check_config(const GameConfig& cfg) {
  if (cfg.a != 0 && cfg.a != 1)
    throw std::invalid_argument("grounded bit must be 0 or 1");
  if (cfg.b != 0 && cfg.b != 1)
    throw std::invalid_argument("targeted bit must be 0 or 1");
  if (cfg.max_attacker_iterations <= 0)
    throw std::invalid_argument("max_attacker_iterations must be positive");
  if (cfg.query_budget && *cfg.query_budget < 0)
    throw std::invalid_argument("query budget must be non-negative");
}

void check_unit_box(const Vec& x) {
  for (double v : x)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::runtime_error("adv_gen produced a point outside the unit box");
}

}  // namespace

int run_game(const GameConfig& cfg, AttackerRole& attacker,
             DefenderRole& defender, GameTranscript* out) {
  check_config(cfg);
  GameTranscript t;

  // Attacker loop: regenerate while the attacker's own detector flags
  // the candidate; a repeated candidate or the iteration bound means it
  // cannot do better, which counts as staying detected.
  int d = 1;
  const CandidateEvent* last = nullptr;
  for (int i = 0; i < cfg.max_attacker_iterations; ++i) {
    auto [x, y] = attacker.adv_gen();
    check_unit_box(x);
    const bool repeat =
        std::any_of(t.candidates.begin(), t.candidates.end(),
                    [&x](const CandidateEvent& e) { return e.x == x; });
    if (repeat) break;
    d = attacker.self_check(x, y);
    t.candidates.push_back({std::move(x), y, d});
    last = &t.candidates.back();
    if (d == 0) break;
  }

  if (d == 1 || last == nullptr) {
    t.outcome = 0;
    if (out) *out = std::move(t);
    return 0;
  }

  t.sent = last->x;
  const int dprime = defender.distinguisher(*t.sent);
  t.defender_detection = dprime;
  if (dprime == 1) {
    t.outcome = 0;  // detected: the defender withholds any response
    if (out) *out = std::move(t);
    return 0;
  }

  t.response = defender.classify(*t.sent);
  if (!t.response) {
    t.outcome = 0;
    if (out) *out = std::move(t);
    return 0;
  }

  if (cfg.b == 0) {
    t.outcome = evaluate_untargeted(attacker.benign_source().y, *t.response);
  } else {
    t.outcome = evaluate_targeted(attacker.target_label(), *t.response);
  }
  const int outcome = t.outcome;
  if (out) *out = std::move(t);
  return outcome;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step over seed ^ golden-ratio-scaled index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BatchResult run_batch(const GameConfig& cfg, const RoleFactory& factory,
                      int trials) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  BatchResult r;
  r.outcomes.reserve(static_cast<std::size_t>(trials));
  r.transcripts.reserve(static_cast<std::size_t>(trials));
  long total = 0;
  for (int i = 0; i < trials; ++i) {
    TrialRoles roles = factory(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    GameTranscript t;
    const int outcome = run_game(cfg, *roles.attacker, *roles.defender, &t);
    total += outcome;
    r.outcomes.push_back(outcome);
    r.transcripts.push_back(std::move(t));
  }
  r.esr = static_cast<double>(total) / static_cast<double>(trials);
  return r;
}

namespace {

// Sends one fixed benign sample unmodified.
struct IdentityAttacker final : AttackerRole {
  Sample sample;
  explicit IdentityAttacker(Sample s) : sample(std::move(s)) {}
  std::pair<Vec, int> adv_gen() override { return {sample.x, sample.y}; }
  int self_check(const Vec&, int) override { return 0; }
  Sample benign_source() override { return sample; }
  int target_label() override { return sample.y; }
};

}  // namespace

double run_benign_baseline(const GameConfig& cfg, DefenderRole& defender,
                           const std::vector<Sample>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("benign baseline needs inputs");
  long total = 0;
  for (const Sample& s : inputs) {
    IdentityAttacker attacker(s);
    total += run_game(cfg, attacker, defender);
  }
  return static_cast<double>(total) / static_cast<double>(inputs.size());
}

std::vector<std::string> transcript_to_lines(const GameTranscript& t) {
  std::vector<std::string> lines;
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  auto vec_str = [&fmt](const Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += " ";
      s += fmt(v[i]);
    }
    return s;
  };

  for (std::size_t i = 0; i < t.candidates.size(); ++i) {
    const CandidateEvent& e = t.candidates[i];
    lines.push_back("candidate " + std::to_string(i) + " x " + vec_str(e.x) +
                    " y " + std::to_string(e.y) + " d " + std::to_string(e.d));
  }
  lines.push_back(t.sent ? "sent x " + vec_str(*t.sent) : "sent none");
  lines.push_back(t.defender_detection
                      ? "defender_detection " + std::to_string(*t.defender_detection)
                      : "defender_detection none");
  if (t.defender_detection && *t.defender_detection == 1)
    lines.push_back("response empty");
  else if (t.sent)
    lines.push_back(t.response ? "response " + std::to_string(*t.response)
                               : "response empty");
  else
    lines.push_back("response none");
  lines.push_back("outcome " + std::to_string(t.outcome));
  return lines;
}

}  // namespace advk
