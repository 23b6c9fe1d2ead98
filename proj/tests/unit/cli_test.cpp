#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sclca/baselines.hpp"
#include "sclca/set_system.hpp"

namespace fs = std::filesystem;
using namespace sclca;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"sclca"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> data_rows(const std::string& text) {
  std::vector<std::string> rows;
  for (auto& l : lines(text)) {
    if (!l.empty() && l[0] != '#') rows.push_back(l);
  }
  if (!rows.empty()) rows.erase(rows.begin());  // header
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sclca_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& body) const {
    std::ofstream(dir_ / name) << body;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST(AutoSets, CoversBothRegimes) {
  EXPECT_EQ(cli::auto_sets(200, 8), 100u);
  EXPECT_EQ(cli::auto_sets(201, 8), 101u);
  EXPECT_EQ(cli::auto_sets(7, 2), 4u);
  EXPECT_THROW(cli::auto_sets(10, 0), std::invalid_argument);
}

TEST_F(CliTest, GenRoundTripsAndIsDeterministic) {
  const auto a = invoke({"gen", "--n", "60", "--s", "6", "--t", "4", "--kind", "planted", "--seed",
                         "9", "--out", path("a.txt")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("n=60 m=30 s=6 t=4 planted_opt=10"), std::string::npos);
  const auto b = invoke({"gen", "--n", "60", "--s", "6", "--t", "4", "--kind", "planted", "--seed",
                         "9", "--out", path("b.txt")});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_NE(slurp(path("a.txt")).find("# planted_opt 10"), std::string::npos);

  const auto inst = read_instance(path("a.txt"));
  EXPECT_EQ(format_instance(inst), slurp(path("a.txt")));
  EXPECT_EQ(inst.planted_opt, 10u);
}

TEST_F(CliTest, GenToStdout) {
  const auto r = invoke({"gen", "--n", "20", "--s", "4", "--t", "3"});
  ASSERT_EQ(r.code, 0);
  const auto inst = parse_instance(r.out);
  EXPECT_EQ(inst.system.num_elements(), 20u);
  EXPECT_NE(r.err.find("n=20"), std::string::npos);
}

TEST_F(CliTest, GenInfeasibleFails) {
  const auto r = invoke({"gen", "--n", "10", "--m", "1", "--s", "2", "--t", "2", "--kind", "planted"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, RunBaseOnSingleSet) {
  const auto file = write("one.txt", "3 1 3 1\n0 1 2\n");
  const auto r = invoke({"run", file, "--algo", "base"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].rfind("base,3,1,3,1,0,1,", 0), 0u) << rows[0];
}

TEST_F(CliTest, RunIsReproducible) {
  invoke({"gen", "--n", "300", "--s", "8", "--t", "8", "--seed", "2", "--out", path("u.txt")});
  const auto a = invoke({"run", path("u.txt"), "--algo", "sqrt", "--seed", "5"});
  const auto b = invoke({"run", path("u.txt"), "--algo", "sqrt", "--seed", "5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("# sclca-run v1"), std::string::npos);
}

TEST_F(CliTest, RunReportsRatioAgainstExactOptimum) {
  invoke({"gen", "--n", "48", "--m", "18", "--s", "6", "--t", "4", "--kind", "planted", "--seed",
          "4", "--out", path("p.txt")});
  const auto inst = read_instance(path("p.txt"));
  const auto exact = exact_min_cover(inst.system);
  ASSERT_TRUE(exact.exact_opt.has_value());

  const auto r = invoke({"run", path("p.txt"), "--algo", "recsplit", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string opt_line;
  for (auto& l : lines(r.out)) {
    if (l.rfind("# opt ", 0) == 0) opt_line = l;
  }
  std::istringstream in(opt_line);
  std::string hash, key, method_key, method, ratio_key;
  std::size_t opt = 0;
  double ratio = 0;
  in >> hash >> key >> opt >> method_key >> method >> ratio_key >> ratio;
  EXPECT_EQ(opt, *exact.exact_opt);
  EXPECT_EQ(method, "exhaustive");

  const auto row = data_rows(r.out).at(0);
  std::vector<std::string> cols;
  std::istringstream rs(row);
  for (std::string c; std::getline(rs, c, ',');) cols.push_back(c);
  const double cover = std::stod(cols.at(6));
  EXPECT_NEAR(ratio, cover / static_cast<double>(opt), 1e-4);
  EXPECT_EQ(cols.at(7), std::to_string(opt));
}

TEST_F(CliTest, RunRejectsUnknownAlgoAndBadFile) {
  const auto file = write("one.txt", "3 1 3 1\n0 1 2\n");
  EXPECT_NE(invoke({"run", file, "--algo", "magic"}).code, 0);
  const auto bad = write("bad.txt", "3 2 3 1\n0 1 2\n");
  const auto r = invoke({"run", bad});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"run", path("missing.txt")}).code, cli::kError);
}

TEST_F(CliTest, LcaSingleSetTarget) {
  const auto file = write("one.txt", "3 1 3 1\n0 1 2\n");
  const auto r = invoke({"lca", file, "--targets", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  std::vector<std::string> cols;
  std::istringstream rs(rows[0]);
  for (std::string c; std::getline(rs, c, ',');) cols.push_back(c);
  ASSERT_EQ(cols.size(), 5u);
  EXPECT_EQ(cols[0], "set");
  EXPECT_EQ(cols[2], "1");
  EXPECT_LE(std::stoul(cols[4]), 4u);
}

TEST_F(CliTest, LcaVerifyPassesOnSmallSuite) {
  for (int seed = 0; seed < 3; ++seed) {
    const auto file = path("i" + std::to_string(seed) + ".txt");
    invoke({"gen", "--n", "120", "--s", "8", "--t", "8", "--kind", "uniform", "--seed",
            std::to_string(seed), "--out", file});
    for (const char* algo : {"sqrt", "recsplit"}) {
      const auto sets = invoke({"lca", file, "--algo", algo, "--seed", "3", "--verify"});
      EXPECT_EQ(sets.code, 0) << sets.err;
      EXPECT_NE(sets.out.find("# verified 60 set targets"), std::string::npos);
      const auto elems = invoke({"oracle", file, "--algo", algo, "--seed", "3", "--elements", "--verify"});
      EXPECT_EQ(elems.code, 0) << elems.err;
      EXPECT_NE(elems.out.find("# verified 120 element targets"), std::string::npos);
    }
  }
}

TEST_F(CliTest, LcaBudgetCapIsCleanError) {
  invoke({"gen", "--n", "200", "--s", "8", "--t", "8", "--seed", "1", "--out", path("u.txt")});
  const auto r = invoke({"lca", path("u.txt"), "--meter-cap", "2"});
  EXPECT_EQ(r.code, cli::kBudget);
  EXPECT_NE(r.err.find("query budget of 2 exceeded"), std::string::npos);
}

TEST_F(CliTest, LcaRejectsOutOfRangeTarget) {
  const auto file = write("one.txt", "3 1 3 1\n0 1 2\n");
  const auto r = invoke({"lca", file, "--targets", "1"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_NE(invoke({"lca", file, "--algo", "greedy"}).code, 0);
}

TEST_F(CliTest, VerifySucceeds) {
  invoke({"gen", "--n", "80", "--s", "4", "--t", "4", "--kind", "planted", "--out", path("p.txt")});
  const auto r = invoke({"verify", path("p.txt"), "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(lines(r.out).size(), 7u);
}

TEST_F(CliTest, BenchGridRowCountAndReproducible) {
  const std::initializer_list<std::string> args = {
      "bench", "--algo", "recsplit", "--n", "60,90", "--s", "4,6", "--t", "4", "--seeds", "2",
      "--kind", "planted"};
  std::vector<std::string> with_out(args);
  auto run_to = [&](const std::string& file) {
    std::vector<std::string> owned{"sclca"};
    owned.insert(owned.end(), args.begin(), args.end());
    owned.push_back("--out");
    owned.push_back(file);
    std::vector<const char*> argv;
    for (const auto& a : owned) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  ASSERT_EQ(run_to(path("a.csv")), 0);
  ASSERT_EQ(run_to(path("b.csv")), 0);
  const auto text = slurp(path("a.csv"));
  EXPECT_EQ(text, slurp(path("b.csv")));

  const auto all = lines(text);
  ASSERT_GE(all.size(), 2u);
  EXPECT_EQ(all[0], cli::kBenchSchema);
  std::vector<std::string> csv;
  for (auto& l : all) {
    if (l[0] != '#') csv.push_back(l);
  }
  ASSERT_EQ(csv.size(), 9u);
  EXPECT_EQ(csv[0], cli::bench_header());
  for (std::size_t i = 1; i < csv.size(); ++i) {
    EXPECT_NE(csv[i].find(",planted,"), std::string::npos);
  }
}

TEST_F(CliTest, BenchRowsSortedAcrossAlgos) {
  const auto r = invoke({"bench", "--algo", "sqrt,base", "--n", "90,60", "--s", "4", "--t", "4",
                         "--seeds", "2", "--oracle-calls", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].rfind("base,60,", 0), 0u);
  EXPECT_EQ(rows[3].rfind("base,90,45,4,4,1,", 0), 0u);
  EXPECT_EQ(rows[4].rfind("sqrt,60,", 0), 0u);
  // base rows leave the query columns empty, sqrt rows fill them
  EXPECT_EQ(rows[0].substr(rows[0].size() - 4), ",,,,");
  EXPECT_NE(rows[4].substr(rows[4].size() - 4), ",,,,");
}

TEST(BenchConfig, RejectsEmptyGridAndZeroSeeds) {
  cli::BenchConfig c;
  c.algos = {"sqrt"};
  c.n = {10};
  c.s = {2};
  c.t = {2};
  EXPECT_NO_THROW(c.validate());
  c.seeds = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.seeds = 1;
  c.n.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.n = {10};
  c.algos = {"nope"};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(CliParse, RequiresSubcommand) {
  const char* argv[] = {"sclca"};
  std::ostringstream out, err;
  EXPECT_NE(cli::run(1, argv, out, err), 0);
}

TEST(CliParse, PolylogConflictsWithLambda) {
  const auto p = fs::temp_directory_path() / "sclca_cli_polylog.txt";
  std::ofstream(p) << "3 1 3 1\n0 1 2\n";
  const auto r = invoke({"run", p.string(), "--polylog", "--lambda5", "6"});
  EXPECT_EQ(r.code, cli::kError);
  EXPECT_EQ(invoke({"run", p.string(), "--polylog"}).code, 0);
  fs::remove(p);
}
