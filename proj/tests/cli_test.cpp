#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "turing_voter/cli.hpp"
#include "turing_voter/stats.hpp"
#include "turing_voter/thermo.hpp"

namespace tvoter::cli {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tvoter");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    out.push_back(fields);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("tvoter_test_" + name);
}

TEST(CliThermo, SingleCellHasZeroGap) {
  const auto r = run_cli({"thermo", "--n", "1", "--coupling", "1", "--temperature", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"N", "J", "T", "k", "gamma", "F", "U", "S",
                                            "landauer_floor", "gap"}));
  EXPECT_EQ(t[1][7], "0.693147181");
  EXPECT_EQ(t[1][9], "0");
}

TEST(CliThermo, EightCells) {
  const auto r = run_cli({"thermo", "--n", "8", "--coupling", "1", "--boltzmann", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(rows(r.out)[1][7], "13.9128023");
}

TEST(CliThermo, ZeroCouplingGapIsExactlyZero) {
  const auto r = run_cli({"thermo", "--n", "12", "--coupling", "0"});
  EXPECT_EQ(rows(r.out)[1][9], "0");
}

TEST(CliThermo, InvalidParametersExitNonzero) {
  EXPECT_NE(run_cli({"thermo", "--n", "3", "--gamma", "0.5"}).status, 0);
  EXPECT_NE(run_cli({"thermo", "--n", "3", "--coupling", "1", "--temperature", "-1"}).status, 0);
  EXPECT_NE(run_cli({"thermo", "--n", "3", "--coupling", "1", "--units", "si"}).status, 0);
  EXPECT_NE(run_cli({"simulate", "--gamma", "0.5", "--coupling", "1"}).status, 0);
  EXPECT_NE(run_cli({"bogus"}).status, 0);
}

TEST(CliThermo, HeaderRecordsSeedAndVersion) {
  const auto r = run_cli({"thermo", "--coupling", "1", "--seed", "77"});
  EXPECT_EQ(r.out.rfind("# tvoter ", 0), 0u);
  EXPECT_NE(r.out.find("# seed=77\n"), std::string::npos);
}

TEST(CliSimulate, UniformTapeHaltsImmediately) {
  const auto r = run_cli({"simulate", "--gamma", "1", "--initial", "++++", "--trajectories", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"trajectory_id", "halted", "consensus_symbol",
                                            "steps", "final_magnetization"}));
  for (std::size_t i = 1; i < t.size(); ++i) {
    EXPECT_EQ(t[i][1], "true");
    EXPECT_EQ(t[i][2], "1");
    EXPECT_EQ(t[i][3], "0");
  }
}

TEST(CliSimulate, ZeroBudgetDoesNotHalt) {
  const auto r = run_cli({"simulate", "--gamma", "0", "--initial", "+-", "--max-steps", "0"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(rows(r.out)[1][1], "false");
}

TEST(CliSimulate, TwoCellConsensusSplitsEvenly) {
  const auto r = run_cli({"simulate", "--gamma", "1", "--initial", "+-", "--trajectories",
                          "10000", "--seed", "5"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  std::uint64_t up = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    ASSERT_EQ(t[i][1], "true");
    up += t[i][2] == "1";
  }
  EXPECT_LE(std::abs(stats::binomial_z(up, 10000, 0.5)), 3.0);
}

TEST(CliSimulate, SerialAndParallelAreByteIdentical) {
  const auto ev1 = temp_path("events1.csv"), ev4 = temp_path("events4.csv");
  const std::vector<std::string> base = {"simulate",  "--gamma",        "0.8",  "--n",
                                         "7",         "--trajectories", "64",   "--seed",
                                         "31",        "--max-steps",    "5000"};
  auto with = [&](std::string threads, const fs::path& events) {
    auto args = base;
    args.insert(args.end(), {"--threads", threads, "--events", events.string()});
    return run_cli(args);
  };
  const auto a = with("1", ev1);
  const auto b = with("4", ev4);
  const auto c = with("4", ev4);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
  const std::string events = slurp(ev4);
  EXPECT_EQ(slurp(ev1), events);
  EXPECT_NE(events.find("time,site,new_symbol,magnetization\n# trajectory=0\n"),
            std::string::npos);
  fs::remove(ev1);
  fs::remove(ev4);
}

TEST(CliExact, TimeZeroIsInitialDistribution) {
  const auto r = run_cli({"exact", "--gamma", "0.3", "--initial", "+-+", "--times", "0"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t[0], (std::vector<std::string>{"time", "state_index", "probability"}));
  for (std::size_t s = 0; s < 8; ++s) EXPECT_EQ(t[1 + s][2], s == 5 ? "1" : "0");
  EXPECT_EQ(t[9], (std::vector<std::string>{"time", "mean_magnetization"}));
  EXPECT_EQ(t[10][1], "0.333333333");
}

TEST(CliExact, FreeSpinRelaxes) {
  const auto r = run_cli({"exact", "--gamma", "0", "--initial", "+", "--times", "40",
                          "--precision", "15"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  EXPECT_NEAR(std::stod(t[1][2]), 0.5, 1e-8);
  EXPECT_NEAR(std::stod(t[2][2]), 0.5, 1e-8);
}

TEST(CliExact, LongTimeMatchesGibbs) {
  const auto summary = temp_path("summary.csv");
  const auto r = run_cli({"exact", "--coupling", "1", "--temperature", "1", "--n", "4",
                          "--initial", "++-+", "--times", "800", "--precision", "17",
                          "--summary-out", summary.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 17u);
  const auto gibbs = gibbs_probabilities(4, 1.0, 1.0, 1.0, 0.0, Boundary::Periodic);
  double tv = 0.0;
  for (std::size_t s = 0; s < 16; ++s) tv += std::abs(std::stod(t[1 + s][2]) - gibbs[s]);
  EXPECT_LE(tv / 2, 1e-8);
  EXPECT_EQ(rows(slurp(summary)).size(), 2u);
  fs::remove(summary);
}

TEST(CliExact, CapExceededIsReported) {
  const auto r = run_cli({"exact", "--gamma", "0.1", "--n", "15"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("capped"), std::string::npos);
}

TEST(CliVerify, ReportAndExitStatus) {
  const auto r = run_cli({"verify", "--trajectories", "20000", "--inject-mismatch"});
  const auto t = rows(r.out);
  ASSERT_EQ(t[0], (std::vector<std::string>{"check", "status", "residual", "tolerance"}));
  bool any_fail = false;
  std::map<std::string, std::vector<std::string>> by_name;
  for (std::size_t i = 1; i < t.size(); ++i) {
    ASSERT_EQ(t[i].size(), 4u);
    any_fail = any_fail || t[i][1] == "FAIL";
    by_name[t[i][0]] = t[i];
  }
  EXPECT_EQ(r.status, any_fail ? 1 : 0);
  EXPECT_EQ(by_name.at("detailed_balance")[1], "PASS");
  EXPECT_EQ(by_name.at("gibbs_stationarity")[1], "PASS");
  EXPECT_EQ(by_name.at("landauer_bound")[1], "PASS");
  EXPECT_EQ(by_name.at("landauer_gap_n1")[2], "0");
  EXPECT_EQ(by_name.at("kmc_vs_exact_pearson_z")[1], "PASS");
  const auto& control = by_name.at("negative_control_detailed_balance_mismatched_gamma");
  EXPECT_EQ(control[1], "FAIL");
  EXPECT_GT(std::stod(control[2]), std::stod(control[3]));
}

TEST(CliSweep, GridRowsAndEqualityCases) {
  const auto r = run_cli({"sweep", "--sweep-n", "1:4", "--sweep-betaj", "0:1:2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 9u);
  for (std::size_t i = 1; i < t.size(); ++i) {
    const std::uint64_t n = (i - 1) / 2 + 1;
    const bool zero_j = (i - 1) % 2 == 0;
    EXPECT_EQ(t[i][0], std::to_string(n));
    EXPECT_EQ(t[i][9] == "0", n == 1 || zero_j) << i;
  }
}

TEST(CliSweep, SinglePointMatchesThermo) {
  const auto sweep = run_cli({"sweep", "--sweep-n", "5:5", "--coupling", "0.7",
                              "--temperature", "1.3"});
  const auto thermo = run_cli({"thermo", "--n", "5", "--coupling", "0.7", "--temperature", "1.3"});
  ASSERT_EQ(sweep.status, 0) << sweep.err;
  EXPECT_EQ(rows(sweep.out), rows(thermo.out));
}

TEST(CliSweep, PetabitPreset) {
  const auto r = run_cli({"sweep", "--preset", "petabit"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto t = rows(r.out);
  EXPECT_EQ(t[0], (std::vector<std::string>{"n_bits", "T", "k", "erasure_energy"}));
  const double e = std::stod(t[1][3]);
  EXPECT_GE(e, 2.8e-6);
  EXPECT_LE(e, 2.95e-6);
}

TEST(CliSweep, EmptyGridsRejected) {
  EXPECT_NE(run_cli({"sweep", "--sweep-betaj", "1:0:3"}).status, 0);
  EXPECT_NE(run_cli({"sweep", "--sweep-betaj", "0:1:0"}).status, 0);
  EXPECT_NE(run_cli({"sweep", "--sweep-n", "4:2", "--coupling", "1"}).status, 0);
}

TEST(CliConfig, FileValuesAreOverriddenByFlags) {
  const auto cfg = temp_path("config.ini");
  std::ofstream(cfg) << "n=3\ncoupling=0.5\ntemperature=2\n";
  const auto from_file = run_cli({"thermo", "--config", cfg.string()});
  ASSERT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_EQ(rows(from_file.out)[1][0], "3");
  EXPECT_EQ(rows(from_file.out)[1][1], "0.5");
  const auto overridden = run_cli({"thermo", "--config", cfg.string(), "--n", "6"});
  EXPECT_EQ(rows(overridden.out)[1][0], "6");
  EXPECT_EQ(rows(overridden.out)[1][1], "0.5");
  fs::remove(cfg);
}

TEST(CliConfig, OutputFile) {
  const auto out = temp_path("thermo.csv");
  const auto r = run_cli({"thermo", "--coupling", "1", "--out", out.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(rows(slurp(out)).size(), 2u);
  fs::remove(out);
}

}  // namespace
}  // namespace tvoter::cli
