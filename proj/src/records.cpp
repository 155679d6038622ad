#include "advk/records.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace advk {

namespace {

const std::set<std::string> kModelTokens{"parameters", "architecture",
                                         "possible_architectures", "scores",
                                         "labels"};
const std::set<std::string> kDataTokens{"training_data", "same_distribution",
                                        "other_data"};
const std::set<std::string> kTrainTokens{"training_function", "loss_function",
                                         "optimizer", "loss_and_optimizer"};
const std::set<std::string> kDefenseTokens{"full_awareness", "partial_awareness",
                                           "set_of_possible_defenses"};
const std::set<std::string> kMetricTokens{"l0", "l2", "linf", "fid", "none"};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "bad number for " + key + ": " + v);
  }
  if (pos != v.size()) throw ParseError(line, "bad number for " + key + ": " + v);
  return d;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "yes") return true;
  if (v == "false" || v == "no") return false;
  throw ParseError(line, "bad flag for " + key + ": " + v);
}

std::optional<std::string> parse_info(const std::string& v, int line,
                                      const std::set<std::string>& vocab,
                                      const std::string& key) {
  if (v == "none") return std::nullopt;
  if (!vocab.count(v))
    throw ParseError(line, "unknown " + key + " token: " + v);
  return v;
}

struct Block {
  int start_line = 0;
  std::map<std::string, std::pair<std::string, int>> fields;  // key -> (value, line)
};

void emit(const Block& blk, std::vector<AttackRecord>& out) {
  auto get = [&blk](const char* key) -> std::optional<std::pair<std::string, int>> {
    auto it = blk.fields.find(key);
    if (it == blk.fields.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](const char* key) {
    auto v = get(key);
    if (!v) throw ParseError(blk.start_line, std::string("missing key: ") + key);
    return *v;
  };

  static const std::set<std::string> known{
      "name",        "variant",        "dataset",       "targeted",
      "defended",    "model",          "benign_esr_pct", "attack_esr_pct",
      "reported_score", "unreliable",  "model_info",    "data_info",
      "train_info",  "defense_info",   "metric",        "note"};
  for (const auto& [key, value] : blk.fields)
    if (!known.count(key)) throw ParseError(value.second, "unknown key: " + key);

  AttackRecord r;
  r.attack = require("name").first;
  if (auto v = get("variant")) r.variant = v->first;
  r.dataset = require("dataset").first;
  if (auto v = get("defended")) r.defended = parse_bool(v->first, v->second, "defended");
  if (auto v = get("model")) r.model = v->first;
  if (auto v = get("benign_esr_pct")) {
    double pct = parse_number(v->first, v->second, "benign_esr_pct");
    if (pct < 0.0 || pct > 100.0)
      throw ParseError(v->second, "benign_esr_pct out of [0, 100]");
    r.benign_esr_pct = pct;
  }
  {
    auto v = require("attack_esr_pct");
    r.attack_esr_pct = parse_number(v.first, v.second, "attack_esr_pct");
    if (r.attack_esr_pct < 0.0 || r.attack_esr_pct > 100.0)
      throw ParseError(v.second, "attack_esr_pct out of [0, 100]");
  }
  if (auto v = get("reported_score")) {
    double s = parse_number(v->first, v->second, "reported_score");
    if (s < -1.0 || s > 1.0)
      throw ParseError(v->second, "reported_score out of [-1, 1]");
    r.reported_score = s;
  }
  if (auto v = get("unreliable"))
    r.unreliable = parse_bool(v->first, v->second, "unreliable");
  if (auto v = get("model_info"))
    r.threat.model_info = parse_info(v->first, v->second, kModelTokens, "model_info");
  if (auto v = get("data_info"))
    r.threat.data_info = parse_info(v->first, v->second, kDataTokens, "data_info");
  if (auto v = get("train_info"))
    r.threat.training_info = parse_info(v->first, v->second, kTrainTokens, "train_info");
  if (auto v = get("defense_info"))
    r.threat.defense_info =
        parse_info(v->first, v->second, kDefenseTokens, "defense_info");
  if (auto v = get("metric")) {
    if (!kMetricTokens.count(v->first))
      throw ParseError(v->second, "unknown metric token: " + v->first);
    r.metric = v->first;
  }
  if (auto v = get("note")) r.note = v->first;

  std::string targeted = "untargeted";
  if (auto v = get("targeted")) {
    targeted = v->first;
    if (targeted != "targeted" && targeted != "untargeted" && targeted != "both" &&
        targeted != "true" && targeted != "false")
      throw ParseError(v->second, "bad targeted value: " + targeted);
  }
  if (targeted == "both") {
    AttackRecord t = r;
    t.targeted = true;
    r.targeted = false;
    out.push_back(std::move(r));
    out.push_back(std::move(t));
    return;
  }
  r.targeted = targeted == "targeted" || targeted == "true";
  out.push_back(std::move(r));
}

}  // namespace

std::vector<AttackRecord> parse_records(const std::string& text) {
  std::vector<AttackRecord> out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::optional<Block> block;

  auto flush = [&]() {
    if (block) emit(*block, out);
    block.reset();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line == "[attack]") {
      flush();
      block = Block{line_no, {}};
      continue;
    }
    if (!block) throw ParseError(line_no, "content outside an [attack] block");
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected key = value, got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for key: " + key);
    if (block->fields.count(key))
      throw ParseError(line_no, "duplicate key: " + key);
    block->fields[key] = {value, line_no};
  }
  flush();
  return out;
}

std::vector<AttackRecord> load_records(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open records file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_records(ss.str());
}

}  // namespace advk
