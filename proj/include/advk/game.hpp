#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advk/dataset.hpp"

namespace advk {

struct GameConfig {
  int a = 0;  // grounded bit: 0 means candidates carry the source label
  int b = 0;  // targeted bit: selects the evaluation predicate
  int max_attacker_iterations = 100;
  std::uint64_t seed = 42;
  std::optional<long> query_budget;  // charged on score/label queries only
};

// One attacker-loop step: the candidate, its claimed label, and the
// attacker's own detector verdict on it.
struct CandidateEvent {
  Vec x;
  int y = 0;
  int d = 0;
};

struct GameTranscript {
  std::vector<CandidateEvent> candidates;
  std::optional<Vec> sent;
  std::optional<int> defender_detection;
  std::optional<int> response;  // defender label; empty means no response
  int outcome = 0;
};

// The attacker side of one game: generates candidates, checks them with
// its own distinguisher replica, and names the benign point it perturbs.
struct AttackerRole {
  virtual ~AttackerRole() = default;
  virtual std::pair<Vec, int> adv_gen() = 0;
  virtual int self_check(const Vec& x, int y) = 0;
  virtual Sample benign_source() = 0;
  virtual int target_label() { return -1; }
};

struct DefenderRole {
  virtual ~DefenderRole() = default;
  virtual int distinguisher(const Vec& x) = 0;
  virtual std::optional<int> classify(const Vec& x) = 0;
};

int evaluate_untargeted(int y, int r);
int evaluate_targeted(int y_t, int r);

// Plays one game: attacker loop with repeat-guard, then detection,
// classification and evaluation. Returns the outcome; fills *out with
// the full trace when given.
int run_game(const GameConfig& cfg, AttackerRole& attacker,
             DefenderRole& defender, GameTranscript* out = nullptr);

struct TrialRoles {
  std::unique_ptr<AttackerRole> attacker;
  std::unique_ptr<DefenderRole> defender;
};

// Builds fresh roles for a trial from its derived seed.
using RoleFactory = std::function<TrialRoles(std::uint64_t)>;

struct BatchResult {
  double esr = 0.0;
  std::vector<int> outcomes;
  std::vector<GameTranscript> transcripts;
};

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

BatchResult run_batch(const GameConfig& cfg, const RoleFactory& factory,
                      int trials);

// Same protocol with the identity generator: each benign input is sent
// unmodified. For the untargeted game this equals 1 - accuracy.
double run_benign_baseline(const GameConfig& cfg, DefenderRole& defender,
                           const std::vector<Sample>& inputs);

std::vector<std::string> transcript_to_lines(const GameTranscript& t);

}  // namespace advk
