// Copyright 2026 The qgas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(QGAS_CLI_PATH) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(QGAS_SAMPLES_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qgas_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolveFindsMinimum) {
  const CliRun r = run("solve --poly " + sample("f.txt") + " --seed 7");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("best_cost: -2\n"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("best_assignment: 10\n"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("seed: 7\n"), std::string::npos);
}

TEST_F(CliTest, ConstantConvergesImmediately) {
  const CliRun r = run("solve --poly " + sample("constant.txt") + " --seed 1");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("best_cost: 5\n"), std::string::npos);
  EXPECT_NE(r.output.find("converged: true"), std::string::npos);
}

TEST_F(CliTest, MalformedLineIsInputError) {
  const CliRun r = run("solve --poly " + sample("malformed.txt"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("line 4"), std::string::npos) << r.output;
}

TEST_F(CliTest, BadFlagsAreInputErrors) {
  EXPECT_EQ(run("solve --poly " + sample("f.txt") + " --lambda 2").code, 1);
  EXPECT_EQ(run("solve --poly " + sample("f.txt") + " --strategy bogus").code, 1);
  EXPECT_EQ(run("solve --poly " + sample("f.txt") + " --strategy classical").code, 1);
  EXPECT_EQ(run("solve --poly /nonexistent/file").code, 1);
  EXPECT_EQ(run("solve").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, BudgetExhaustionExitsTwo) {
  const CliRun r = run("solve --poly " + sample("qubo8.txt") + " --seed 3 --budget 1");
  EXPECT_EQ(r.code, 2) << r.output;
  EXPECT_NE(r.output.find("converged: false"), std::string::npos);
}

TEST_F(CliTest, SolveTraceIsDeterministic) {
  const std::string args = "solve --poly " + sample("qubo8.txt") + " --seed 11 --strategy quantile:0.2 --out ";
  ASSERT_EQ(run(args + path("a.json")).code, 0);
  ASSERT_EQ(run(args + path("b.json")).code, 0);
  const std::string a = slurp(path("a.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.json")));
  EXPECT_NE(a.find("\"rng_seed\": 11"), std::string::npos);
}

TEST_F(CliTest, ExperimentZeroTrialsHeaderOnly) {
  const CliRun r = run("mimo-experiment --trials 0 --out " + path("e"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(slurp(path("e.csv")), "trial,strategy,n,queries_to_optimum,converged,best_cost,optimal_cost\n");
  EXPECT_EQ(slurp(path("e_cdf.csv")), "strategy,queries,cdf\n");
}

TEST_F(CliTest, ExperimentRerunIsByteIdentical) {
  const std::string args = "mimo-experiment --n 4 --trials 3 --seed 5 --out ";
  ASSERT_EQ(run(args + path("a")).code, 0);
  ASSERT_EQ(run(args + path("b")).code, 0);
  for (const char* ext : {".csv", "_cdf.csv", ".json"}) {
    EXPECT_EQ(slurp(path(std::string("a") + ext)), slurp(path(std::string("b") + ext))) << ext;
  }
  EXPECT_NE(slurp(path("a.json")).find("\"seed\": 5"), std::string::npos);
}

TEST_F(CliTest, ExperimentOverLimitFailsBeforeRunning) {
  const CliRun r = run("mimo-experiment --n 14 --trials 1 --out " + path("x"));
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(path("x.csv")));
  EXPECT_EQ(run("mimo-experiment --mod 16qam --out " + path("y")).code, 1);
}

TEST_F(CliTest, GrassmannCheck) {
  CliRun r = run("grassmann-check --mub");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("min_chordal_distance: 0.70711"), std::string::npos) << r.output;
  r = run("grassmann-check --codebook " + sample("orthonormal.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("min_chordal_distance: 1.00000"), std::string::npos) << r.output;
  r = run("grassmann-check --codebook " + sample("duplicate.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("min_chordal_distance: 0.00000"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("warning:"), std::string::npos);
  EXPECT_EQ(run("grassmann-check").code, 1);
}

TEST_F(CliTest, ColoringTriangle) {
  CliRun r = run("coloring --graph " + sample("triangle.txt") + " --colors 4 --seed 2");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("conflicts: 0"), std::string::npos) << r.output;
  r = run("coloring --graph " + sample("triangle.txt") + " --colors 2 --seed 2");
  EXPECT_NE(r.output.find("conflicts: 1"), std::string::npos) << r.output;
  EXPECT_EQ(run("coloring --graph " + sample("triangle.txt") + " --colors 3").code, 1);
}

TEST_F(CliTest, CodebookMubPair) {
  const CliRun r = run("codebook --mub --select 2 --seed 4");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("min_chordal_distance: 1.00000"), std::string::npos) << r.output;
}

TEST_F(CliTest, SimulateBell) {
  const CliRun r = run("simulate --circuit " + sample("bell.txt") + " --shots 1000 --seed 9 --out " + path("s.json"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("00 0.500000"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("11 0.500000"), std::string::npos) << r.output;
  EXPECT_EQ(r.output.find("01 "), std::string::npos);
  const std::string first = slurp(path("s.json"));
  run("simulate --circuit " + sample("bell.txt") + " --shots 1000 --seed 9 --out " + path("s.json"));
  EXPECT_EQ(first, slurp(path("s.json")));
}

}  // namespace
