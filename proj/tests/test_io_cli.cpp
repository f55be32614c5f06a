#include "liestab/cli.hpp"
#include "liestab/errors.hpp"
#include "liestab/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace liestab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("liestab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

int run_cmd(const std::string& command, const std::string& builtin_name, const std::string& scenario,
            const fs::path& out_dir, std::string* err_text = nullptr) {
  RunConfig c;
  c.command = command;
  c.builtin = builtin_name;
  c.scenario_path = scenario;
  c.out_dir = out_dir.string();
  std::ostringstream out, err;
  const int code = run(c, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

const char* kGrowing = R"({
  "name": "growing",
  "algebra": "abelian-2",
  "n": 1,
  "A": [[2, 0], [0, 2]],
  "ideal": "full",
  "x0": [1, 1],
  "horizon": 500
})";

}  // namespace

TEST(ScenarioJson, BracketListBuildsHeisenberg) {
  const Json j = Json::parse(R"({"dim": 3, "labels": ["h1", "h2", "h3"],
    "brackets": [{"x": "h1", "y": "h2", "result": {"h3": -1}}]})");
  const LieAlgebra a = algebra_from_json(j);
  const LieAlgebra ref = catalog::heisenberg();
  EXPECT_EQ(a.structure_constants(), ref.structure_constants());
  EXPECT_EQ(algebra_from_json(algebra_to_json(a)).structure_constants(), ref.structure_constants());
}

TEST(ScenarioJson, RoundTripPreservesDynamics) {
  for (const auto& name : builtin_names()) {
    if (name == "example-6.1") continue;  // function-valued input has no file form
    const Scenario s = builtin(name);
    const Scenario t = scenario_from_json(scenario_to_json(s));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
      const Vector X = random_vector(s.system.state_size(), rng), W = random_vector(s.system.input_size(), rng);
      EXPECT_LT((eval(s.system, X, W) - eval(t.system, X, W)).norm(), 1e-14) << name;
    }
    EXPECT_EQ(t.horizon, s.horizon);
    EXPECT_LT((t.X0 - s.X0).norm(), 1e-15);
    for (long k = 0; k < 5; ++k) EXPECT_LT((t.signal.at(k) - s.signal.at(k)).norm(), 1e-12) << name;
  }
}

TEST(ScenarioJson, ErrorsNameTheField) {
  auto message = [](const std::string& text) -> std::string {
    try {
      scenario_from_json(Json::parse(text));
    } catch (const InputError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message(R"({"algebra": "heisenberg", "n": 1})").find("'A'"), std::string::npos);
  EXPECT_NE(message(R"({"algebra": "heisenberg", "n": 1, "A": [1, 2]})").find("'A'"), std::string::npos);
  EXPECT_NE(message(R"({"algebra": "nope", "n": 1, "A": [1]})"), "");
  EXPECT_NE(message(R"({"algebra": "heisenberg", "n": 1, "A": [[1,0,0],[0,1,0],[0,0,1]],
                        "terms": [{"letters": ["X3"], "coeff": 1}]})"),
            "");
  EXPECT_NE(message(R"({"algebra": "heisenberg", "n": 1, "A": [[1,0,0],[0,1,0],[0,0,1]], "norm": "max"})")
                .find("norm"),
            std::string::npos);
}

TEST(ScenarioJson, ParseErrorReportsPosition) {
  const fs::path dir = scratch("parse");
  const fs::path p = write_file(dir, "bad.json", "{\n  \"algebra\": \"heisenberg\",\n  \"n\": 1,,\n}");
  try {
    load_scenario(p.string());
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ScenarioJson, ParseSlot) {
  EXPECT_TRUE(parse_slot("X1") == Slot::X(0));
  EXPECT_TRUE(parse_slot("W3") == Slot::W(2));
  EXPECT_THROW(parse_slot("X0"), InputError);
  EXPECT_THROW(parse_slot("Y1"), InputError);
}

TEST(TrajectoryCsv, DeterministicAndWellFormed) {
  const fs::path a = scratch("csv_a"), b = scratch("csv_b");
  ASSERT_EQ(run_cmd("simulate", "example-4.1", "", a), kExitPass);
  ASSERT_EQ(run_cmd("simulate", "example-4.1", "", b), kExitPass);
  const std::string csv = slurp(a / "example-4.1_trajectory.csv");
  EXPECT_EQ(csv, slurp(b / "example-4.1_trajectory.csv"));
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  std::string header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    ++rows;
  }
  EXPECT_EQ(rows, 51);
  EXPECT_EQ(header.rfind("k,X1.h1,X1.h2,X1.h3,norm", 0), 0u) << header;
}

TEST(TrajectoryCsv, ThreadCountDoesNotChangeResults) {
  const fs::path a = scratch("threads_a"), b = scratch("threads_b");
  setenv("LIESTAB_THREADS", "1", 1);
  ASSERT_EQ(run_cmd("deadbeat", "heisenberg-deadbeat", "", a), kExitPass);
  setenv("LIESTAB_THREADS", "4", 1);
  ASSERT_EQ(run_cmd("deadbeat", "heisenberg-deadbeat", "", b), kExitPass);
  unsetenv("LIESTAB_THREADS");
  EXPECT_EQ(slurp(a / "heisenberg-deadbeat_deadbeat.json"), slurp(b / "heisenberg-deadbeat_deadbeat.json"));
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("exit");
  EXPECT_EQ(run_cmd("certify", "example-4.1", "", dir), kExitPass);
  EXPECT_TRUE(fs::exists(dir / "example-4.1_certificate.json"));
  EXPECT_EQ(run_cmd("check", "example-6.1", "", dir), kExitPass);
  EXPECT_EQ(run_cmd("deadbeat", "upper-triangular-deadbeat", "", dir), kExitPass);
  // Hypothesis failures.
  EXPECT_EQ(run_cmd("deadbeat", "example-4.1", "", dir), kExitHypothesis);
  // Input errors.
  std::string err;
  EXPECT_EQ(run_cmd("simulate", "no-such-builtin", "", dir, &err), kExitInput);
  EXPECT_NE(err.find("no-such-builtin"), std::string::npos);
  EXPECT_EQ(run_cmd("simulate", "", "", dir), kExitInput);
  EXPECT_EQ(run_cmd("simulate", "", (dir / "missing.json").string(), dir), kExitInput);
  EXPECT_EQ(run_cmd("explode", "example-4.1", "", dir), kExitInput);
  // Divergence.
  const fs::path grow = write_file(dir, "growing.json", kGrowing);
  EXPECT_EQ(run_cmd("simulate", "", grow.string(), dir, &err), kExitDivergence);
  EXPECT_NE(err.find("diverged"), std::string::npos);
}

TEST(Cli, DoubledLinearPartIsRejected) {
  // Doubling A moves rho(A) from 0.354 to 0.707, above the threshold 0.5.
  const fs::path dir = scratch("doubled");
  Json j = scenario_to_json(builtin("example-4.1"));
  Json rows = j["A"];
  for (auto& row : rows)
    for (auto& v : row) v = 2.0 * v.get<double>();
  j["A"] = rows;
  j["name"] = "doubled";
  const fs::path p = write_file(dir, "doubled.json", j.dump());
  EXPECT_EQ(run_cmd("certify", "", p.string(), dir), kExitHypothesis);
  const Json cert = Json::parse(slurp(dir / "doubled_certificate.json"));
  EXPECT_FALSE(cert["certificate"]["issued"].get<bool>());
}

TEST(Cli, ArgvParsing) {
  const fs::path dir = scratch("argv");
  const std::string out = dir.string();
  std::vector<std::string> args = {"liestab", "simulate", "--builtin", "example-4.1", "--horizon", "7", "--out", out};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data()), kExitPass);
  const Json tr = Json::parse(slurp(dir / "example-4.1_trajectory.json"));
  EXPECT_EQ(tr["trajectory"]["norms"].size(), 8u);

  std::vector<std::string> bad = {"liestab", "simulate"};
  std::vector<char*> argv2;
  for (auto& a : bad) argv2.push_back(a.data());
  EXPECT_EQ(run_cli(static_cast<int>(argv2.size()), argv2.data()), kExitInput);
}

namespace {

std::vector<std::vector<double>> csv_columns(const std::string& csv, std::vector<std::string>& names) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::vector<double>> cols;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    if (names.empty()) {
      while (std::getline(ls, cell, ',')) names.push_back(cell);
      cols.resize(names.size());
      continue;
    }
    for (std::size_t c = 0; std::getline(ls, cell, ','); ++c) cols[c].push_back(std::stod(cell));
  }
  return cols;
}

std::size_t column(const std::vector<std::string>& names, const std::string& name) {
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

}  // namespace

TEST(Cli, CheckFailsOnInputOnlyWord) {
  const fs::path dir = scratch("input_word");
  const fs::path p = write_file(dir, "input_word.json", R"({
    "name": "input-word", "algebra": "heisenberg", "n": 1, "r": 2,
    "A": [[0.5, 0, 0], [0, 0.5, 0], [0, 0, 0.5]], "ideal": "full",
    "terms": [{"letters": ["W1", "W2"], "coeff": 1}], "x0": [1, 0, 0]})");
  EXPECT_EQ(run_cmd("check", "", p.string(), dir), kExitHypothesis);
  const Json report = Json::parse(slurp(dir / "input-word_check.json"));
  EXPECT_FALSE(report["equilibrium"]["structural_ok"].get<bool>());
}

TEST(Cli, CertifySolvableExample) {
  const fs::path dir = scratch("certify61");
  EXPECT_EQ(run_cmd("certify", "example-6.1", "", dir), kExitPass);
  const Json cert = Json::parse(slurp(dir / "example-6.1_certificate.json"));
  EXPECT_NEAR(cert["certificate"]["rho_A"].get<double>(), 0.75, 1e-12);
  EXPECT_TRUE(cert["certificate"]["conditional"].get<bool>());
}

TEST(Cli, ReproduceColumns) {
  const fs::path dir = scratch("reproduce");
  ASSERT_EQ(run_cmd("reproduce", "example-4.1", "", dir), kExitPass);
  std::vector<std::string> names;
  auto cols = csv_columns(slurp(dir / "example-4.1_trajectory.csv"), names);
  const auto& norm = cols[column(names, "norm")];
  ASSERT_EQ(norm.size(), 51u);
  EXPECT_LT(norm.back(), 1e-6);
  // The h1, h2 part (quotient modulo the centre) decays monotonically; the central
  // coordinate has a transient driven by the growing reference.
  const auto& q = cols[column(names, "qnorm_1")];
  for (std::size_t k = 1; k < q.size(); ++k) EXPECT_LE(q[k], q[k - 1]);

  ASSERT_EQ(run_cmd("reproduce", "example-6.1", "", dir), kExitPass);
  names.clear();
  cols = csv_columns(slurp(dir / "example-6.1_trajectory.csv"), names);
  EXPECT_LT(cols[column(names, "norm_X1")].back(), 1e-4);
  EXPECT_LT(cols[column(names, "norm_X2")].back(), 1e-4);
}

TEST(Cli, ZeroInitialConditionGivesZeroColumns) {
  const fs::path dir = scratch("zero");
  Json j = scenario_to_json(builtin("example-4.1"));
  j["x0"] = {0, 0, 0};
  j["name"] = "zero";
  const fs::path p = write_file(dir, "zero.json", j.dump());
  ASSERT_EQ(run_cmd("simulate", "", p.string(), dir), kExitPass);
  std::vector<std::string> names;
  const auto cols = csv_columns(slurp(dir / "zero_trajectory.csv"), names);
  for (std::size_t c = 1; c < cols.size(); ++c)
    for (double v : cols[c]) EXPECT_EQ(v, 0.0) << names[c];
}
