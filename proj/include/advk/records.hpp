#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "advk/catalog.hpp"

namespace advk {

// One published evaluation row: what the attacker knew, what it scored.
// Percentages are stored as printed (0..100).
struct AttackRecord {
  std::string attack;
  std::string variant;  // empty when the attack has a single flavor
  std::string dataset;
  bool targeted = false;
  bool defended = false;
  std::string model;
  std::optional<double> benign_esr_pct;
  double attack_esr_pct = 0.0;
  std::optional<double> reported_score;
  bool unreliable = false;  // flagged rows are reported but never gate checks
  ThreatModel threat;
  std::string metric = "none";  // l0 | l2 | linf | fid | none
  std::string note;
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

// Record files are blocks starting with "[attack]", one "key = value" pair
// per line, "#" comments, blank line ends a block. "targeted = both" expands
// into a targeted and an untargeted record sharing the other fields.
std::vector<AttackRecord> parse_records(const std::string& text);
std::vector<AttackRecord> load_records(const std::string& path);

}  // namespace advk
