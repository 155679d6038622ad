#include "advk/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#ifdef _WIN32
#include <io.h>
#define ADVK_ISATTY _isatty(1)
#else
#include <unistd.h>
#define ADVK_ISATTY isatty(1)
#endif

#include "advk/attack.hpp"
#include "advk/catalog.hpp"
#include "advk/classifier.hpp"
#include "advk/dataset.hpp"
#include "advk/game.hpp"
#include "advk/metrics.hpp"
#include "advk/poset.hpp"
#include "advk/records.hpp"

namespace advk {

namespace {

bool use_color(const std::ostream& out) {
  return &out == &std::cout && ADVK_ISATTY &&
         std::getenv("ADVK_NO_COLOR") == nullptr;
}

std::string colored(const std::string& word, bool color) {
  return color ? "\033[1;32m" + word + "\033[0m" : word;
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

DerivationRegistry registry_with_axiom_file(const std::string& path) {
  DerivationRegistry reg = default_registry();
  if (path.empty()) return reg;
  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string from, arrow, to;
    if (!(ls >> from)) continue;
    if (!(ls >> arrow >> to) || arrow != "->")
      throw std::runtime_error("axiom file line " + std::to_string(lineno) +
                               ": expected `FROM -> TO justification`");
    std::string justification;
    std::getline(ls, justification);
    const std::size_t start = justification.find_first_not_of(" \t");
    justification =
        start == std::string::npos ? "" : justification.substr(start);
    reg.add_axiom(from, to, justification);
  }
  return reg;
}

int cmd_compare(const std::string& a, const std::string& b,
                const std::string& axiom_file, std::ostream& out) {
  const DerivationRegistry reg = registry_with_axiom_file(axiom_file);
  const Catalog cat = canonical_catalog();
  const OracleDescriptor oa = resolve_oracle(cat, a, reg);
  const OracleDescriptor ob = resolve_oracle(cat, b, reg);
  const Relation rel = compare(oa, ob, reg);
  out << a << " " << colored(relation_name(rel), use_color(out)) << " " << b
      << "\n";
  return 0;
}

int cmd_hasse(const std::string& category, const std::string& out_path) {
  const DerivationRegistry reg = default_registry();
  std::string dot;
  auto render = [&reg](Category c, const std::string& name) {
    const std::vector<OracleDescriptor> oracles = category_catalog(c, reg);
    const Poset p = build_poset(oracles, reg);
    const HasseDiagram h = transitive_reduction(p);
    std::vector<std::string> notes;
    if (c == Category::Training)
      notes.push_back(
          "membership conditions generate an open-ended family; shown: "
          "loss, optimizer and their join");
    return to_dot(h, "hasse_" + name, notes);
  };
  if (category == "all") {
    dot = render(Category::Model, "model") + render(Category::Data, "data") +
          render(Category::Training, "train") +
          render(Category::Defense, "defense");
  } else if (category == "model") {
    dot = render(Category::Model, "model");
  } else if (category == "data") {
    dot = render(Category::Data, "data");
  } else if (category == "train") {
    dot = render(Category::Training, "train");
  } else if (category == "defense") {
    dot = render(Category::Defense, "defense");
  } else {
    throw std::runtime_error("unknown category: " + category);
  }
  write_file(out_path, dot);
  return 0;
}

std::pair<std::string, std::string> split_attack_spec(const std::string& s) {
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) return {s, ""};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

const AttackRecord* find_record(const std::vector<AttackRecord>& records,
                                const std::string& spec) {
  const auto [attack, variant] = split_attack_spec(spec);
  for (const AttackRecord& r : records)
    if (r.attack == attack && (variant.empty() || r.variant == variant))
      return &r;
  return nullptr;
}

int cmd_threat(const std::string& records_path, const std::string& a,
               const std::string& b, std::ostream& out) {
  const std::vector<AttackRecord> records = load_records(records_path);
  const AttackRecord* ra = find_record(records, a);
  if (ra == nullptr) throw std::runtime_error("no record matches: " + a);
  const AttackRecord* rb = find_record(records, b);
  if (rb == nullptr) throw std::runtime_error("no record matches: " + b);
  const DerivationRegistry reg = default_registry();
  const Catalog cat = canonical_catalog();
  const Relation rel = compare_threat_models(ra->threat, rb->threat, cat, reg);
  out << a << " " << colored(relation_name(rel), use_color(out)) << " " << b
      << "\n";
  return 0;
}

struct PgdAttackerRole final : AttackerRole {
  const TinyClassifier* model;
  PgdParams params;
  Sample src;
  LpDistinguisher dist;

  PgdAttackerRole(const TinyClassifier* m, const PgdParams& p, Sample s)
      : model(m), params(p), src(std::move(s)) {
    dist = LpDistinguisher{kLinf, p.eps, src.x};
  }

  std::pair<Vec, int> adv_gen() override {
    OracleSurface surface;
    surface.model = model;
    surface.loss_available = true;
    surface.input = src;
    surface.self_dist = &dist;
    AdvCandidate c = pgd_advgen(surface, params);
    return {std::move(c.x), c.y};
  }
  int self_check(const Vec& x, int) override { return dist(x); }
  Sample benign_source() override { return src; }
  int target_label() override { return params.target.value_or(-1); }
};

struct DeskDefender final : DefenderRole {
  const TinyClassifier* model;
  LpDistinguisher dist;

  int distinguisher(const Vec& x) override { return dist(x); }
  std::optional<int> classify(const Vec& x) override {
    return model->classify(x);
  }
};

int cmd_simulate(double eps, double alpha, int steps, int trials,
                 std::uint64_t seed, std::optional<int> targeted,
                 bool benign_baseline, std::ostream& out) {
  if (trials <= 0) throw std::runtime_error("trials must be positive");

  const SyntheticDataset train_data = gaussian_blobs(256, DataRole::Train, seed);
  TrainParams tp;
  tp.seed = seed;
  const TrainResult trained = train_sgd(train_data, Arch::Linear, 0, tp);
  const TinyClassifier& model = trained.model;

  GameConfig cfg;
  cfg.a = 0;
  cfg.b = targeted ? 1 : 0;
  cfg.seed = seed;

  PgdParams params;
  params.eps = eps;
  params.alpha = alpha;
  params.steps = steps;
  params.target = targeted;

  RoleFactory factory = [&model, &params, eps](std::uint64_t trial) {
    const SyntheticDataset d =
        gaussian_blobs(1, DataRole::SameDistribution, trial);
    const Sample& s = d.samples.front();
    TrialRoles roles;
    roles.attacker = std::make_unique<PgdAttackerRole>(&model, params, s);
    auto def = std::make_unique<DeskDefender>();
    def->model = &model;
    def->dist = LpDistinguisher{kLinf, eps, s.x};
    roles.defender = std::move(def);
    return roles;
  };

  out << "attack pgd eps " << fmt9(eps) << " alpha " << fmt9(alpha)
      << " steps " << steps << " trials " << trials << " seed " << seed
      << " targeted "
      << (targeted ? std::to_string(*targeted) : std::string("none")) << "\n";

  const BatchResult batch = run_batch(cfg, factory, trials);
  for (int i = 0; i < trials; ++i) {
    out << "trial " << i << "\n";
    for (const std::string& line :
         transcript_to_lines(batch.transcripts[static_cast<std::size_t>(i)]))
      out << line << "\n";
  }
  out << "esr " << fmt9(batch.esr) << "\n";

  if (benign_baseline) {
    std::vector<Sample> inputs;
    inputs.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; ++i) {
      const SyntheticDataset d = gaussian_blobs(
          1, DataRole::SameDistribution,
          trial_seed(seed, static_cast<std::uint64_t>(i)));
      inputs.push_back(d.samples.front());
    }
    // Baseline defender measures clean behavior; its detector reference
    // is the input itself, so nothing is flagged.
    double total = 0.0;
    for (const Sample& s : inputs) {
      DeskDefender def;
      def.model = &model;
      def.dist = LpDistinguisher{kLinf, eps, s.x};
      std::vector<Sample> one{s};
      total += run_benign_baseline(cfg, def, one);
    }
    const double benign_esr = total / static_cast<double>(trials);
    out << "benign_esr " << fmt9(benign_esr) << "\n";
    out << "rps " << fmt9(rps(batch.esr, benign_esr)) << "\n";
  }
  return 0;
}

int cmd_score(const std::string& records_path, const std::string& out_path,
              std::ostream& out) {
  const std::vector<AttackRecord> records = load_records(records_path);
  const ScoreReport report = recompute_scores(records);
  write_file(out_path, report_to_csv(report));
  long ok = 0, mismatch = 0, unreliable = 0, no_benign = 0, no_report = 0;
  for (const ScoreRow& r : report.rows) {
    if (r.flag == "ok") ++ok;
    if (r.flag == "mismatch") ++mismatch;
    if (r.flag == "unreliable") ++unreliable;
    if (r.flag == "no_benign") ++no_benign;
    if (r.flag == "no_report") ++no_report;
  }
  out << "rows " << report.rows.size() << " ok " << ok << " mismatch "
      << mismatch << " unreliable " << unreliable << " no_benign " << no_benign
      << " no_report " << no_report << " groups " << report.groups.size()
      << "\n";
  return 0;
}

int cmd_grid(double step, const std::string& out_path) {
  const auto grid = rps_grid(step);
  std::string csv;
  char buf[64];
  for (const auto& row : grid) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.4f", row[j]);
      if (j) csv += ",";
      csv += buf;
    }
    csv += "\n";
  }
  write_file(out_path, csv);
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"adversary knowledge algebra toolkit"};
  app.set_version_flag("--version", "advk 0.1.0");
  app.require_subcommand(1);

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "order two oracles from the catalog");
  std::string cmp_a, cmp_b, axiom_file;
  compare_cmd->add_option("--a", cmp_a, "first oracle name")->required();
  compare_cmd->add_option("--b", cmp_b, "second oracle name")->required();
  compare_cmd->add_option("--axiom-file", axiom_file,
                          "extra derivability axioms, `FROM -> TO why` lines");

  // hasse
  auto* hasse_cmd =
      app.add_subcommand("hasse", "export a category diagram as DOT");
  std::string category, hasse_out;
  hasse_cmd->add_option("--category", category, "which diagram")
      ->required()
      ->check(CLI::IsMember({"model", "data", "train", "defense", "all"}));
  hasse_cmd->add_option("--out", hasse_out, "output DOT path")->required();

  // threat
  auto* threat_cmd = app.add_subcommand(
      "threat", "order the knowledge of two recorded attacks");
  std::string records_path, threat_a, threat_b;
  threat_cmd->add_option("--records", records_path, "record file")->required();
  threat_cmd->add_option("--a", threat_a, "ATTACK[:VARIANT]")->required();
  threat_cmd->add_option("--b", threat_b, "ATTACK[:VARIANT]")->required();

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "run the desk-scale security game");
  std::string attack_name = "pgd";
  double eps = 0.3, alpha = 0.05;
  int steps = 40, trials = 200;
  std::uint64_t seed = 42;
  int targeted_class = -1;
  bool benign_baseline = false;
  sim_cmd->add_option("--attack", attack_name, "attack to run")
      ->check(CLI::IsMember({"pgd"}));
  sim_cmd->add_option("--eps", eps, "perturbation budget");
  sim_cmd->add_option("--alpha", alpha, "step size");
  sim_cmd->add_option("--steps", steps, "iterations");
  sim_cmd->add_option("--trials", trials, "independent games");
  sim_cmd->add_option("--seed", seed, "master seed");
  auto* targeted_opt =
      sim_cmd->add_option("--targeted", targeted_class, "target class");
  sim_cmd->add_flag("--benign-baseline", benign_baseline,
                    "also run the benign game and report the score");

  // score
  auto* score_cmd =
      app.add_subcommand("score", "recompute published score tables");
  std::string score_records, score_out;
  score_cmd->add_option("--records", score_records, "record file")->required();
  score_cmd->add_option("--out", score_out, "output CSV path")->required();

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "export the score surface");
  double grid_step = 0.1;
  std::string grid_out;
  grid_cmd->add_option("--step", grid_step, "lattice step")->required();
  grid_cmd->add_option("--out", grid_out, "output CSV path")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return 2;
  }

  try {
    if (compare_cmd->parsed()) return cmd_compare(cmp_a, cmp_b, axiom_file, out);
    if (hasse_cmd->parsed()) return cmd_hasse(category, hasse_out);
    if (threat_cmd->parsed())
      return cmd_threat(records_path, threat_a, threat_b, out);
    if (sim_cmd->parsed()) {
      std::optional<int> targeted;
      if (targeted_opt->count() > 0) targeted = targeted_class;
      return cmd_simulate(eps, alpha, steps, trials, seed, targeted,
                          benign_baseline, out);
    }
    if (score_cmd->parsed()) return cmd_score(score_records, score_out, out);
    if (grid_cmd->parsed()) return cmd_grid(grid_step, grid_out);
    err << "error: no subcommand given\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace advk
