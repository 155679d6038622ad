#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "advk/cli.hpp"

using advk::run_cli;

namespace {

const std::string kRecords = ADVK_SOURCE_DIR "/data/attack_records.kv";

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("advk_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("compare orders catalog oracles") {
  auto r = cli({"compare", "--a", "scores", "--b", "labels"});
  CHECK(r.code == 0);
  CHECK(r.out == "scores DOMINATES labels\n");
  CHECK(r.err.empty());

  r = cli({"compare", "--a", "labels", "--b", "scores"});
  CHECK(r.out == "labels DOMINATED_BY scores\n");

  r = cli({"compare", "--a", "scores", "--b", "scores"});
  CHECK(r.out == "scores EQUIVALENT scores\n");

  r = cli({"compare", "--a", "training_data", "--b", "other_data"});
  CHECK(r.out == "training_data INCOMPARABLE other_data\n");

  r = cli({"compare", "--a", "parameters", "--b", "architecture&scores"});
  CHECK(r.out == "parameters DOMINATES architecture&scores\n");
}

TEST_CASE("usage errors exit with 2 and point at --help") {
  auto r = cli({"compare", "--a", "scores", "--b", "labels", "--frob"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("error: ") == 0);
  CHECK(r.err.find("run with --help for usage\n") != std::string::npos);

  CHECK(cli({}).code == 2);
  CHECK(cli({"hasse", "--category", "shapes", "--out", "x.dot"}).code == 2);
}

TEST_CASE("domain errors exit with 1") {
  const auto r = cli({"compare", "--a", "nope", "--b", "labels"});
  CHECK(r.code == 1);
  CHECK(r.err == "error: unknown oracle: nope\n");
}

TEST_CASE("version and help") {
  auto r = cli({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == "advk 0.1.0\n");

  r = cli({"--help"});
  CHECK(r.code == 0);
  for (const char* name :
       {"compare", "hasse", "threat", "simulate", "score", "grid"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("extra axioms can collapse the score/label gap") {
  const auto axioms = temp_path("axioms.txt");
  std::ofstream(axioms) << "# labels reveal everything here\n"
                        << "argmax(M(x)) -> M(x) two-class scores are a bit\n";
  const auto r = cli({"compare", "--a", "labels", "--b", "scores",
                      "--axiom-file", axioms.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "labels EQUIVALENT scores\n");

  const auto bad = temp_path("axioms_bad.txt");
  std::ofstream(bad) << "argmax(M(x)) => M(x) wrong arrow\n";
  const auto rb = cli({"compare", "--a", "labels", "--b", "scores",
                       "--axiom-file", bad.string()});
  CHECK(rb.code == 1);
  CHECK(rb.err ==
        "error: axiom file line 1: expected `FROM -> TO justification`\n");
}

TEST_CASE("hasse writes the defense chain") {
  const auto out = temp_path("defense.dot");
  const auto r = cli({"hasse", "--category", "defense", "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string dot = slurp(out);
  CHECK(dot.find("digraph hasse_defense {") == 0);
  CHECK(dot.find("\"full_awareness\" -> \"partial_awareness\";") !=
        std::string::npos);
  CHECK(dot.find("\"partial_awareness\" -> \"set_of_possible_defenses\";") !=
        std::string::npos);
}

TEST_CASE("hasse all concatenates the four diagrams") {
  const auto out = temp_path("all.dot");
  CHECK(cli({"hasse", "--category", "all", "--out", out.string()}).code == 0);
  const std::string dot = slurp(out);
  const auto model = dot.find("digraph hasse_model {");
  const auto data = dot.find("digraph hasse_data {");
  const auto train = dot.find("digraph hasse_train {");
  const auto defense = dot.find("digraph hasse_defense {");
  REQUIRE(model != std::string::npos);
  REQUIRE(data != std::string::npos);
  REQUIRE(train != std::string::npos);
  REQUIRE(defense != std::string::npos);
  CHECK(model < data);
  CHECK(data < train);
  CHECK(train < defense);
  CHECK(dot.find("membership conditions generate an open-ended family; "
                 "shown: loss, optimizer and their join") != std::string::npos);
}

TEST_CASE("threat orders recorded attacks by their knowledge") {
  auto r = cli({"threat", "--records", kRecords, "--a", "A3", "--b", "SSAH:A"});
  CHECK(r.code == 0);
  CHECK(r.out == "A3 DOMINATES SSAH:A\n");

  r = cli({"threat", "--records", kRecords, "--a", "BIA:B", "--b", "BIA:C"});
  CHECK(r.out == "BIA:B INCOMPARABLE BIA:C\n");

  r = cli({"threat", "--records", kRecords, "--a", "Nope", "--b", "BIA:C"});
  CHECK(r.code == 1);
  CHECK(r.err == "error: no record matches: Nope\n");
}

TEST_CASE("score summarizes the bundled tables with zero mismatches") {
  const auto out = temp_path("scores.csv");
  const auto r = cli({"score", "--records", kRecords, "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("rows 74 ok ") == 0);
  CHECK(r.out.find(" mismatch 0 ") != std::string::npos);

  const std::string csv = slurp(out);
  CHECK(csv.find("attack,variant,model,benign_esr,attack_esr,recomputed_score,"
                 "reported_score,delta,flag\n") == 0);
  CHECK(csv.find("BIA,B,ResNet-50,24.3900,95.5600,0.8537,0.8540,0.0003,ok\n") !=
        std::string::npos);
  CHECK(csv.find(",mean,") != std::string::npos);
  CHECK(csv.find(",stddev,") != std::string::npos);
}

TEST_CASE("grid exports the score surface") {
  const auto out = temp_path("grid.csv");
  CHECK(cli({"grid", "--step", "0.5", "--out", out.string()}).code == 0);
  CHECK(slurp(out) ==
        "0.0000,-0.2500,-1.0000\n"
        "0.2500,0.0000,-0.7500\n"
        "1.0000,0.7500,0.0000\n");

  CHECK(cli({"grid", "--step", "0.3", "--out", out.string()}).code == 1);
}

TEST_CASE("simulate is reproducible byte for byte") {
  const std::vector<std::string> args = {"simulate", "--trials", "3",
                                         "--steps", "5", "--seed", "7"};
  const auto a = cli(args);
  const auto b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("attack pgd eps 0.3 alpha 0.05 steps 5 trials 3 seed 7 "
                   "targeted none\n") == 0);
  CHECK(a.out.find("trial 0\n") != std::string::npos);
  CHECK(a.out.find("trial 2\n") != std::string::npos);
  CHECK(a.out.find("\nesr ") != std::string::npos);
  CHECK(a.out.find("benign_esr ") == std::string::npos);
}

TEST_CASE("simulate can add the benign baseline and the score") {
  const auto r = cli({"simulate", "--trials", "3", "--steps", "5", "--seed",
                      "7", "--benign-baseline"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nbenign_esr ") != std::string::npos);
  CHECK(r.out.find("\nrps ") != std::string::npos);
}

TEST_CASE("simulate accepts a target class") {
  const auto r = cli({"simulate", "--trials", "2", "--steps", "5", "--seed",
                      "7", "--targeted", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("targeted 1\n") != std::string::npos);

  CHECK(cli({"simulate", "--trials", "0"}).code == 1);
}
