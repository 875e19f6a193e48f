#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#ifndef ECIC_CLI_PATH
#error "ECIC_CLI_PATH must name the ecic executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ECIC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, Params) {
  const auto pent = run("params --instance pentagon --q 2");
  ASSERT_EQ(pent.code, 0);
  EXPECT_EQ(parse(pent)["alpha"], 2);
  EXPECT_EQ(parse(pent)["kappa"], 3);
  const auto ex1 = run("params --instance example1 --q 2");
  EXPECT_EQ(parse(ex1)["alpha"], 1);
  EXPECT_EQ(parse(ex1)["kappa"], 1);
}

TEST(Cli, InputErrorsExitTwo) {
  const std::string path = testing::TempDir() + "malformed_instance.json";
  std::ofstream(path) << "{\"m\": 1, \"n\": 2, \"f\": [1], \"X\": [[1]]}";
  const auto bad = run("params --instance " + path);
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_EQ(run("params --q 6").code, 2);
  EXPECT_EQ(run("params --instance does-not-exist").code, 2);
  EXPECT_EQ(run("verify --instance pentagon").code, 2);
  EXPECT_EQ(run("verify --instance pentagon --matrix example1").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, Verify) {
  const auto pent = run("verify --instance pentagon --matrix pentagon --delta 2");
  ASSERT_EQ(pent.code, 0);
  EXPECT_EQ(parse(pent)["valid"], true);
  EXPECT_EQ(parse(pent)["radius"], 2);

  const auto ex1 = run("verify --instance example1 --matrix example1 --delta 2");
  ASSERT_EQ(ex1.code, 1);
  const auto doc = parse(ex1);
  EXPECT_EQ(doc["valid"], false);
  EXPECT_EQ(doc["certificate"]["z"], nlohmann::json({1, 0, 0}));
  EXPECT_EQ(doc["code_min_distance"], 1);

  EXPECT_EQ(run("verify --instance pentagon --matrix identity --delta 0 --q 5").code, 0);
}

TEST(Cli, MatrixFileRoundTrip) {
  const std::string path = testing::TempDir() + "pentagon_matrix.txt";
  const auto built = run("construct --instance pentagon --delta 1 --q 4 --strategy mds-concat --format text");
  ASSERT_EQ(built.code, 0);
  std::ofstream(path) << built.out;
  const auto v = run("verify --instance pentagon --delta 1 --matrix " + path);
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(parse(v)["radius"], 1);
}

TEST(Cli, Search) {
  const auto zero = run("search --instance pentagon --delta 0");
  ASSERT_EQ(zero.code, 0);
  EXPECT_EQ(parse(zero)["optimal_N"], 3);

  const auto starved = run("search --instance pentagon --delta 2 --node-budget 1");
  EXPECT_EQ(starved.code, 3);
  const auto doc = parse(starved);
  EXPECT_EQ(doc["complete"], false);
  EXPECT_EQ(doc["infeasible_below"], 7);
  EXPECT_EQ(doc["smallest_feasible"], 10);
}

TEST(Cli, SimulateAndCheck) {
  const auto sim = run("simulate --instance pentagon --matrix pentagon --delta 2 --error 010000100 --seed 3");
  ASSERT_EQ(sim.code, 0);
  std::size_t lines = 0;
  for (std::size_t p = 0; (p = sim.out.find('\n', p)) != std::string::npos; ++p) ++lines;
  EXPECT_EQ(lines, 5u);

  const auto rnd = run("simulate --instance pentagon --matrix pentagon --delta 2 --random-errors 20 --format json");
  ASSERT_EQ(rnd.code, 0);
  EXPECT_EQ(parse(rnd)["outcomes"].size(), 100u);

  EXPECT_EQ(run("check --instance example1 --matrix example1 --delta 1").code, 0);
  EXPECT_EQ(run("check --instance example1 --matrix example1 --delta 2").code, 1);
  EXPECT_EQ(run("check --instance pentagon --matrix pentagon --delta 2 --enum-budget 100").code, 3);
}

TEST(Cli, JsonOutputIsDeterministic) {
  for (const std::string args : {"bounds --instance pentagon --delta 2",
                                 "construct --instance pentagon --delta 1 --strategy random --seed 5",
                                 "search --instance example1 --delta 1",
                                 "simulate --instance pentagon --matrix pentagon --delta 2 --random-errors 5 --seed 9",
                                 "validate --instance odd-cycle-complement:2"}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}
