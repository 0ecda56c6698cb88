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

/**
 * @file
 * Seeded Monte Carlo harness for queries-to-optimum on random MIMO
 * detection instances: classical exhaustive search against GAS under
 * several initial-threshold strategies.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qgas/comm.hpp"
#include "qgas/gas.hpp"
#include "qgas/trace_io.hpp"

namespace qgas {

inline constexpr unsigned kMaxExperimentBits = 12;
inline const std::string kClassicalStrategyName = "exhaustive";

/// splitmix64 over (base, trial, stream); independent streams per trial.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial, std::uint64_t stream) {
  std::uint64_t z = base;
  for (std::uint64_t v : {trial, stream}) {
    z += 0x9e3779b97f4a7c15ULL + v;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

struct ExperimentConfig {
  /// Total bits n; num_tx = n / bits_per_symbol.
  unsigned n_bits = 8;
  Modulation modulation = Modulation::kQpsk;
  /// 0 means as many receive antennas as transmit antennas.
  unsigned num_rx = 0;
  double snr_db = 10.0;
  unsigned trials = 200;
  std::vector<ThresholdStrategy> strategies{ThresholdStrategy::random_sample(),
                                            ThresholdStrategy::classical_approximate(),
                                            ThresholdStrategy::combined()};
  bool include_classical = true;
  std::uint64_t seed = 1;
  /// Template for every GAS run; seed, strategy and approximate solution
  /// are filled per trial.
  GasConfig gas = [] {
    GasConfig g;
    g.backend = Backend::kSubspace;
    g.real_precision_bits = 10;
    return g;
  }();
  unsigned threads = 1;

  unsigned num_tx() const { return n_bits / bits_per_symbol(modulation); }

  void validate() const {
    if (n_bits == 0 || n_bits % bits_per_symbol(modulation)) {
      throw std::invalid_argument("bit count must be a positive multiple of the bits per symbol");
    }
    if (n_bits > kMaxExperimentBits) {
      throw ResourceError("experiment search space 2^" + std::to_string(n_bits) + " exceeds the 2^" +
                          std::to_string(kMaxExperimentBits) + " limit");
    }
    const unsigned m = gas.m ? gas.m : gas.real_precision_bits;
    if (n_bits + m > simulator_qubit_limit()) {
      throw ResourceError("experiment needs " + std::to_string(n_bits + m) +
                          " qubits, over the simulator limit");
    }
    if (threads < 1) throw std::invalid_argument("thread count must be positive");
    for (const auto& s : strategies) {
      if (s.kind == ThresholdStrategy::Kind::kQuantile || s.kind == ThresholdStrategy::Kind::kCombined) {
        if (!(s.quantile > 0.0 && s.quantile < 1.0)) throw std::invalid_argument("quantile must lie in (0, 1)");
      }
    }
  }
};

struct TrialRecord {
  unsigned trial = 0;
  std::string strategy;
  unsigned n = 0;
  /// Queries when the optimum was first seen, or every query spent if never.
  std::uint64_t queries_to_optimum = 0;
  bool converged = false;
  double best_cost = 0;
  double optimal_cost = 0;

  bool reached(double tol = 1e-9) const { return best_cost <= optimal_cost + tol; }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;

  std::vector<std::string> strategy_names() const {
    std::vector<std::string> names;
    if (config.include_classical) names.push_back(kClassicalStrategyName);
    for (const auto& s : config.strategies) names.push_back(s.to_string());
    return names;
  }

  std::vector<const TrialRecord*> records_for(const std::string& strategy) const {
    std::vector<const TrialRecord*> out;
    for (const auto& r : records) {
      if (r.strategy == strategy) out.push_back(&r);
    }
    return out;
  }

  double mean_queries(const std::string& strategy) const {
    const auto rs = records_for(strategy);
    if (rs.empty()) return 0;
    double s = 0;
    for (const auto* r : rs) s += static_cast<double>(r->queries_to_optimum);
    return s / static_cast<double>(rs.size());
  }
};

/// All records of one trial, in strategy order.
inline std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, unsigned trial) {
  const unsigned tx = cfg.num_tx();
  const unsigned rx = cfg.num_rx ? cfg.num_rx : tx;
  const MimoInstance inst =
      generate_mimo(tx, rx, cfg.modulation, cfg.snr_db, derive_seed(cfg.seed, trial, 0));
  const BinaryPolynomial poly = ml_cost_polynomial(inst);
  const auto costs = cost_table(poly);
  const double optimum = *std::min_element(costs.begin(), costs.end());
  const Assignment approx = linear_detector(inst);

  std::vector<TrialRecord> out;
  if (cfg.include_classical) {
    const ClassicalResult cr = classical_exhaustive(poly, derive_seed(cfg.seed, trial, 1));
    out.push_back({trial, kClassicalStrategyName, poly.num_vars(), cr.queries_used, true, cr.cost, optimum});
  }
  // Strategies share one GAS seed so they differ only in their start.
  const std::uint64_t gas_seed = derive_seed(cfg.seed, trial, 2);
  for (const auto& strategy : cfg.strategies) {
    GasConfig gc = cfg.gas;
    gc.rng_seed = gas_seed;
    gc.initial_threshold_strategy = strategy;
    gc.approximate_solution = approx;
    const GasTrace trace = run_gas(poly, gc);
    const auto q = trace.queries_to_reach(optimum);
    out.push_back({trial, strategy.to_string(), poly.num_vars(), q.value_or(trace.total_oracle_queries),
                   trace.converged, trace.best_cost, optimum});
  }
  return out;
}

/// Runs every trial (optionally on several threads) and returns records
/// sorted by trial, then strategy order.
inline ExperimentResult run_query_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<TrialRecord>> per_trial(cfg.trials);
  std::atomic<unsigned> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (unsigned t = next++; t < cfg.trials; t = next++) {
      try {
        per_trial[t] = run_trial(cfg, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min(cfg.threads, std::max(1U, cfg.trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result{cfg, {}};
  for (auto& recs : per_trial) {
    for (auto& r : recs) result.records.push_back(std::move(r));
  }
  return result;
}

namespace detail {

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

inline void write_records_csv(std::ostream& out, const ExperimentResult& result) {
  out << "trial,strategy,n,queries_to_optimum,converged,best_cost,optimal_cost\n";
  for (const auto& r : result.records) {
    out << r.trial << ',' << r.strategy << ',' << r.n << ',' << r.queries_to_optimum << ','
        << (r.converged ? 1 : 0) << ',' << detail::format_double(r.best_cost) << ','
        << detail::format_double(r.optimal_cost) << '\n';
  }
}

/// Empirical CDF of queries-to-optimum per strategy over all trials; a
/// trial that never reached the optimum never enters the numerator.
inline void write_cdf_csv(std::ostream& out, const ExperimentResult& result) {
  out << "strategy,queries,cdf\n";
  const double trials = result.config.trials;
  for (const auto& name : result.strategy_names()) {
    std::map<std::uint64_t, unsigned> counts;
    for (const auto* r : result.records_for(name)) {
      if (r->reached()) ++counts[r->queries_to_optimum];
    }
    unsigned seen = 0;
    for (const auto& [q, c] : counts) {
      seen += c;
      out << name << ',' << q << ',' << detail::format_double(seen / trials) << '\n';
    }
  }
}

inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["n_bits"] = c.n_bits;
  j["modulation"] = to_string(c.modulation);
  j["num_tx"] = c.num_tx();
  j["num_rx"] = c.num_rx ? c.num_rx : c.num_tx();
  j["snr_db"] = c.snr_db;
  j["trials"] = c.trials;
  Json strategies = Json::array();
  for (const auto& s : c.strategies) strategies.push_back(s.to_string());
  j["strategies"] = std::move(strategies);
  j["include_classical"] = c.include_classical;
  j["seed"] = c.seed;
  Json gas = to_json(c.gas);
  gas.erase("rng_seed");
  gas.erase("initial_threshold_strategy");
  gas.erase("approximate_solution");
  j["gas"] = std::move(gas);
  return j;
}

inline Json experiment_summary_json(const ExperimentResult& result) {
  Json j;
  j["config"] = to_json(result.config);
  Json means;
  for (const auto& name : result.strategy_names()) {
    const auto rs = result.records_for(name);
    const auto reached = std::count_if(rs.begin(), rs.end(), [](const TrialRecord* r) { return r->reached(); });
    means[name] = {{"mean_queries_to_optimum", result.mean_queries(name)}, {"reached_optimum", reached}};
  }
  j["summary"] = std::move(means);
  return j;
}

}  // namespace qgas
