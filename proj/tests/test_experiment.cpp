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

#include <set>
#include <sstream>

#include "qgas/experiment.hpp"

namespace qgas {
namespace {

ExperimentConfig small_config(unsigned trials) {
  ExperimentConfig c;
  c.n_bits = 4;
  c.trials = trials;
  c.seed = 42;
  return c;
}

std::string records_csv(const ExperimentResult& r) {
  std::ostringstream os;
  write_records_csv(os, r);
  return os.str();
}

TEST(Experiment, DeriveSeedSeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 100; ++t) {
    for (std::uint64_t s = 0; s < 3; ++s) seen.insert(derive_seed(7, t, s));
  }
  EXPECT_EQ(seen.size(), 300u);
  EXPECT_EQ(derive_seed(7, 3, 1), derive_seed(7, 3, 1));
}

TEST(Experiment, ZeroTrialsWritesHeaderOnly) {
  const auto r = run_query_experiment(small_config(0));
  EXPECT_EQ(records_csv(r), "trial,strategy,n,queries_to_optimum,converged,best_cost,optimal_cost\n");
  std::ostringstream cdf;
  write_cdf_csv(cdf, r);
  EXPECT_EQ(cdf.str(), "strategy,queries,cdf\n");
}

TEST(Experiment, RecordsAreCompleteAndSorted) {
  const auto cfg = small_config(10);
  const auto r = run_query_experiment(cfg);
  ASSERT_EQ(r.records.size(), 40u);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    EXPECT_EQ(r.records[i].trial, i / 4);
    EXPECT_EQ(r.records[i].strategy, r.strategy_names()[i % 4]);
    EXPECT_EQ(r.records[i].n, 4u);
  }
  for (const auto* rec : r.records_for(kClassicalStrategyName)) {
    EXPECT_TRUE(rec->reached());
    EXPECT_GE(rec->queries_to_optimum, 1u);
    EXPECT_LE(rec->queries_to_optimum, 16u);
  }
}

TEST(Experiment, DeterministicAcrossRunsAndThreads) {
  auto cfg = small_config(12);
  const std::string a = records_csv(run_query_experiment(cfg));
  const std::string b = records_csv(run_query_experiment(cfg));
  cfg.threads = 3;
  const std::string c = records_csv(run_query_experiment(cfg));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Experiment, CdfIsMonotoneAndBounded) {
  const auto r = run_query_experiment(small_config(20));
  std::ostringstream os;
  write_cdf_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::pair<std::uint64_t, double>> last;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const std::string name = line.substr(0, c1);
    const auto q = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
    const double f = std::stod(line.substr(c2 + 1));
    if (last.count(name)) {
      EXPECT_GT(q, last[name].first);
      EXPECT_GT(f, last[name].second);
    }
    EXPECT_LE(f, 1.0);
    last[name] = {q, f};
  }
  EXPECT_DOUBLE_EQ(last[kClassicalStrategyName].second, 1.0);
}

TEST(Experiment, LimitsAreEnforcedBeforeRunning) {
  auto cfg = small_config(1);
  cfg.n_bits = 14;
  EXPECT_THROW(run_query_experiment(cfg), ResourceError);
  cfg.n_bits = 5;
  EXPECT_THROW(run_query_experiment(cfg), std::invalid_argument);
  cfg.n_bits = 4;
  cfg.strategies = {ThresholdStrategy::quantile_of(1.5)};
  EXPECT_THROW(run_query_experiment(cfg), std::invalid_argument);
}

TEST(Experiment, SummaryJsonEmbedsConfig) {
  const auto r = run_query_experiment(small_config(3));
  const Json j = experiment_summary_json(r);
  EXPECT_EQ(j["config"]["seed"], 42);
  EXPECT_EQ(j["config"]["n_bits"], 4);
  EXPECT_EQ(j["config"]["modulation"], "qpsk");
  EXPECT_FALSE(j["config"]["gas"].contains("rng_seed"));
  EXPECT_TRUE(j["summary"].contains("exhaustive"));
  EXPECT_TRUE(j["summary"].contains("combined:0.1"));
}

}  // namespace
}  // namespace qgas
