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
 * Grover adaptive search over binary polynomials.
 *
 * One round prepares A|0> for f - t (t the current threshold), applies the
 * Grover operator G = (2|A0><A0| - 1) O a drawn number of times, measures,
 * and evaluates the measured assignment classically. O is a single Z on the
 * sign qubit of the cost register, so a branch is marked iff its encoded
 * cost is negative. One oracle query is one application of G.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgas/circuit.hpp"
#include "qgas/polynomial.hpp"
#include "qgas/statevector.hpp"

namespace qgas {

struct ThresholdStrategy {
  enum class Kind { kRandomSample, kQuantile, kClassicalApproximate, kCombined };

  Kind kind = Kind::kRandomSample;
  double quantile = 0.1;

  static ThresholdStrategy random_sample() { return {Kind::kRandomSample, 0.1}; }
  static ThresholdStrategy quantile_of(double q) { return {Kind::kQuantile, q}; }
  static ThresholdStrategy classical_approximate() { return {Kind::kClassicalApproximate, 0.1}; }
  /// Lower of the sample quantile and the approximate solution.
  static ThresholdStrategy combined(double q = 0.1) { return {Kind::kCombined, q}; }

  /// Accepts random, quantile:<q>, classical, combined, combined:<q>.
  static ThresholdStrategy parse(std::string_view text) {
    auto number = [&](std::string_view rest) {
      try {
        std::size_t used = 0;
        const double q = std::stod(std::string(rest), &used);
        if (used != rest.size()) throw std::invalid_argument("");
        return q;
      } catch (const std::exception&) {
        throw std::invalid_argument("bad quantile in strategy '" + std::string(text) + "'");
      }
    };
    if (text == "random") return random_sample();
    if (text == "classical") return classical_approximate();
    if (text == "combined") return combined();
    if (text.starts_with("quantile:")) return quantile_of(number(text.substr(9)));
    if (text.starts_with("combined:")) return combined(number(text.substr(9)));
    throw std::invalid_argument("unknown threshold strategy '" + std::string(text) + "'");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::kRandomSample: return "random";
      case Kind::kQuantile: return "quantile:" + format_quantile();
      case Kind::kClassicalApproximate: return "classical";
      case Kind::kCombined: return "combined:" + format_quantile();
    }
    return "?";
  }

  bool needs_approximate_solution() const {
    return kind == Kind::kClassicalApproximate || kind == Kind::kCombined;
  }

  bool operator==(const ThresholdStrategy&) const = default;

 private:
  std::string format_quantile() const {
    std::ostringstream os;
    os << quantile;
    return os.str();
  }
};

/// How the amplified outcome distribution is computed. kStatevector runs
/// the compiled gate-level preparation and applies G to the dense state;
/// kSubspace uses the exact two-dimensional rotation of amplitude
/// amplification over the same prepared distribution.
enum class Backend { kStatevector, kSubspace };

inline std::string to_string(Backend b) { return b == Backend::kStatevector ? "statevector" : "subspace"; }

inline Backend parse_backend(std::string_view s) {
  if (s == "statevector") return Backend::kStatevector;
  if (s == "subspace") return Backend::kSubspace;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

inline constexpr std::uint64_t kDefaultOracleBudget = 100000;

struct GasConfig {
  /// Cost-register width; 0 sizes it from the exact cost range.
  unsigned m = 0;
  /// Register width used for real-coefficient costs when m is 0.
  unsigned real_precision_bits = kDefaultRealPrecisionBits;
  double lambda = 8.0 / 7.0;
  std::uint64_t max_oracle_queries = kDefaultOracleBudget;
  std::uint64_t rng_seed = 0;
  ThresholdStrategy initial_threshold_strategy;
  /// Caller-supplied approximate solution for the classical strategies.
  std::optional<Assignment> approximate_solution;
  /// Restricts the search to Hamming weight k via a Dicke-state variable
  /// register.
  std::optional<unsigned> dicke_weight;
  /// Unaccepted rounds at full schedule before stopping; 0 = 3 ceil(log2 N).
  unsigned stall_rounds = 0;
  Backend backend = Backend::kStatevector;

  void validate() const {
    if (!(lambda > 1.0 && lambda < 4.0 / 3.0)) {
      throw std::invalid_argument("lambda must lie in (1, 4/3)");
    }
    if (max_oracle_queries < 1) throw std::invalid_argument("oracle budget must be positive");
    if (m == 1) throw std::invalid_argument("cost register needs at least 2 qubits");
    if (initial_threshold_strategy.kind == ThresholdStrategy::Kind::kQuantile ||
        initial_threshold_strategy.kind == ThresholdStrategy::Kind::kCombined) {
      const double q = initial_threshold_strategy.quantile;
      if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile must lie in (0, 1)");
    }
    if (initial_threshold_strategy.needs_approximate_solution() && !approximate_solution) {
      throw std::invalid_argument("strategy " + initial_threshold_strategy.to_string() +
                                  " needs an approximate solution");
    }
  }
};

/// The set of assignments the variable register ranges over: all 2^n, or
/// only those of Hamming weight k.
struct SearchSpace {
  unsigned num_vars = 0;
  std::optional<unsigned> weight;

  double size() const {
    if (!weight) return std::ldexp(1.0, static_cast<int>(num_vars));
    double c = 1;
    for (unsigned i = 0; i < *weight; ++i) c = c * (num_vars - i) / (i + 1);
    return std::round(c);
  }

  bool contains(BasisIndex x) const {
    return !weight || static_cast<unsigned>(std::popcount(x)) == *weight;
  }

  /// Squared amplitude of branch x in the prepared variable register.
  double branch_probability(BasisIndex x) const { return contains(x) ? 1.0 / size() : 0.0; }

  template <class Rng>
  BasisIndex sample(Rng& rng) const {
    if (!weight) {
      if (num_vars == 0) return 0;
      return std::uniform_int_distribution<BasisIndex>(0, (BasisIndex{1} << num_vars) - 1)(rng);
    }
    std::vector<unsigned> idx(num_vars);
    std::iota(idx.begin(), idx.end(), 0U);
    std::shuffle(idx.begin(), idx.end(), rng);
    BasisIndex x = 0;
    for (unsigned i = 0; i < *weight; ++i) x |= BasisIndex{1} << idx[i];
    return x;
  }

  void validate() const {
    if (weight && *weight > num_vars) throw std::invalid_argument("Dicke weight exceeds variable count");
  }
};

/// Oracle on an n + m qubit register: one Z on the cost sign qubit.
inline Circuit build_oracle(unsigned num_vars, unsigned m) {
  if (m < 1) throw std::invalid_argument("oracle needs a cost register");
  Circuit c(num_vars + m);
  c.add(Gate::z(num_vars + m - 1));
  return c;
}

/// Gate-level Grover operator: oracle, prep^-1, reflection about |0...0>
/// (X layer, multi-controlled Z, X layer), prep. Equals
/// -(2|A0><A0| - 1) O, i.e. the amplification step up to a global phase.
inline Circuit grover_operator(const Circuit& prep, unsigned m) {
  const unsigned total = prep.num_qubits();
  if (m < 1 || m > total) throw std::invalid_argument("cost register does not fit the preparation");
  Circuit g = build_oracle(total - m, m);
  g.append(prep.inverse());
  for (unsigned q = 0; q < total; ++q) g.add(Gate::x(q));
  std::vector<unsigned> controls(total - 1);
  std::iota(controls.begin(), controls.end(), 0U);
  g.add(Gate::mc_phase(std::numbers::pi, total - 1, std::move(controls)));
  for (unsigned q = 0; q < total; ++q) g.add(Gate::x(q));
  g.append(prep);
  return g;
}

/// One amplification step (2|prepared><prepared| - 1) O on `state`.
inline void grover_step(StateVector& state, const StateVector& prepared, unsigned sign_qubit) {
  apply_gate(state, Gate::z(sign_qubit));
  const auto overlap = inner_product(prepared, state);
  auto amps = state.mutable_amplitudes();
  auto ref = prepared.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = 2.0 * overlap * ref[i] - amps[i];
}

/// Outcome distribution after k rotations. The full register is indexed
/// by x | (y << n) with y the cost-register code; the variable marginal is
/// indexed by x alone.
class AmplifiedDistribution {
 public:
  virtual ~AmplifiedDistribution() = default;
  /// Prepared probability mass on the marked (negative-cost) branches.
  virtual double marked_probability() const = 0;
  virtual std::vector<double> outcome_probabilities(std::uint64_t rotations) const = 0;
  virtual std::vector<double> variable_probabilities(std::uint64_t rotations) const = 0;
};

class StatevectorAmplifier final : public AmplifiedDistribution {
 public:
  /// `shifted` is f - t; `bounds` must contain all of its costs.
  StatevectorAmplifier(const BinaryPolynomial& shifted, const CostEncoding& enc,
                       const SearchSpace& space, const Bounds& bounds)
      : prepared_(shifted.num_vars() + enc.m),
        num_vars_(shifted.num_vars()),
        sign_qubit_(shifted.num_vars() + enc.m - 1) {
    if (space.weight) {
      const StateVector dicke = dicke_state(shifted.num_vars(), *space.weight);
      auto amps = prepared_.mutable_amplitudes();
      amps[0] = 0;
      for (BasisIndex x = 0; x < dicke.size(); ++x) amps[x] = dicke[x];
      apply_circuit(prepared_, compile_cost_encoding(shifted, enc, bounds));
    } else {
      apply_circuit(prepared_, compile_state_prep(shifted, enc, bounds));
    }
    const auto amps = prepared_.amplitudes();
    const BasisIndex sign = BasisIndex{1} << sign_qubit_;
    for (BasisIndex i = 0; i < amps.size(); ++i) {
      if (i & sign) marked_ += std::norm(amps[i]);
    }
  }

  double marked_probability() const override { return marked_; }

  std::vector<double> outcome_probabilities(std::uint64_t rotations) const override {
    StateVector state = prepared_;
    for (std::uint64_t r = 0; r < rotations; ++r) grover_step(state, prepared_, sign_qubit_);
    return probabilities(state);
  }

  std::vector<double> variable_probabilities(std::uint64_t rotations) const override {
    const auto full = outcome_probabilities(rotations);
    const BasisIndex mask = (BasisIndex{1} << num_vars_) - 1;
    std::vector<double> out(mask + 1, 0.0);
    for (BasisIndex i = 0; i < full.size(); ++i) out[i & mask] += full[i];
    return out;
  }

  const StateVector& prepared_state() const { return prepared_; }

 private:
  StateVector prepared_;
  unsigned num_vars_;
  unsigned sign_qubit_;
  double marked_ = 0;
};

/// Probability of reading code y after phase-encoding the real value v on
/// m qubits and applying the IQFT (the Fejer kernel; a point mass at
/// v mod 2^m for integer v).
inline double encoded_readout_probability(double v, BasisIndex y, unsigned m) {
  const double size = std::ldexp(1.0, static_cast<int>(m));
  const double nearest = std::nearbyint(v);
  if (std::abs(v - nearest) <= 1e-9) {
    const auto code = to_twos_complement(static_cast<std::int64_t>(nearest), m);
    return code == y ? 1.0 : 0.0;
  }
  const double delta = v - static_cast<double>(y);
  const double num = std::sin(std::numbers::pi * delta);
  const double den = size * std::sin(std::numbers::pi * delta / size);
  return (num * num) / (den * den);
}

/// Probability that the sign qubit reads 1 for the encoded value v.
inline double encoded_sign_probability(double v, unsigned m) {
  const BasisIndex size = BasisIndex{1} << m;
  const double nearest = std::nearbyint(v);
  if (std::abs(v - nearest) <= 1e-9) {
    return to_twos_complement(static_cast<std::int64_t>(nearest), m) >= size / 2 ? 1.0 : 0.0;
  }
  const double sz = static_cast<double>(size);
  const double s = std::sin(std::numbers::pi * v);
  double acc = 0;
  for (BasisIndex y = size / 2; y < size; ++y) {
    const double d = std::sin(std::numbers::pi * (v - static_cast<double>(y)) / sz);
    acc += 1.0 / (d * d);
  }
  return std::clamp(s * s * acc / (sz * sz), 0.0, 1.0);
}

class SubspaceAmplifier final : public AmplifiedDistribution {
 public:
  /// `shifted_costs[x]` is f(x) - t for every assignment index x.
  SubspaceAmplifier(std::span<const double> shifted_costs, const CostEncoding& enc,
                    const SearchSpace& space)
      : n_(space.num_vars), m_(enc.m) {
    const BasisIndex num_x = BasisIndex{1} << n_;
    weight_.assign(num_x, 0.0);
    marked_fraction_.assign(num_x, 0.0);
    value_.assign(num_x, 0.0);
    for (BasisIndex x = 0; x < num_x; ++x) {
      weight_[x] = space.branch_probability(x);
      if (weight_[x] == 0) continue;
      value_[x] = enc.scale * shifted_costs[x];
      marked_fraction_[x] = encoded_sign_probability(value_[x], m_);
      marked_ += weight_[x] * marked_fraction_[x];
    }
  }

  double marked_probability() const override { return marked_; }

  std::vector<double> outcome_probabilities(std::uint64_t rotations) const override {
    const auto [good, bad] = factors(rotations);
    const BasisIndex num_y = BasisIndex{1} << m_;
    std::vector<double> out(weight_.size() * num_y, 0.0);
    for (BasisIndex x = 0; x < weight_.size(); ++x) {
      if (weight_[x] == 0) continue;
      for (BasisIndex y = 0; y < num_y; ++y) {
        out[x | (y << n_)] = weight_[x] * encoded_readout_probability(value_[x], y, m_) *
                             (y >= num_y / 2 ? good : bad);
      }
    }
    return out;
  }

  std::vector<double> variable_probabilities(std::uint64_t rotations) const override {
    const auto [good, bad] = factors(rotations);
    std::vector<double> out(weight_.size());
    for (BasisIndex x = 0; x < out.size(); ++x) {
      out[x] = weight_[x] * (marked_fraction_[x] * good + (1 - marked_fraction_[x]) * bad);
    }
    return out;
  }

 private:
  /// Per-unit-mass amplification of marked and unmarked branches.
  std::pair<double, double> factors(std::uint64_t rotations) const {
    if (rotations == 0 || marked_ <= 1e-15 || marked_ >= 1 - 1e-15) return {1.0, 1.0};
    const double theta = std::asin(std::sqrt(marked_));
    const double angle = static_cast<double>(2 * rotations + 1) * theta;
    return {std::pow(std::sin(angle), 2) / marked_, std::pow(std::cos(angle), 2) / (1 - marked_)};
  }

  unsigned n_;
  unsigned m_;
  std::vector<double> weight_;
  std::vector<double> marked_fraction_;
  std::vector<double> value_;
  double marked_ = 0;
};

/// Register sizing for GAS: every shifted cost f(x) - t with t itself a
/// cost lies in [-R, R] for R = upper - lower.
inline CostEncoding gas_encoding(const BinaryPolynomial& poly, const Bounds& bounds,
                                 unsigned requested_m, unsigned real_bits) {
  const double range = bounds.upper - bounds.lower;
  if (poly.is_integral()) {
    const auto r = static_cast<std::int64_t>(range);
    const unsigned needed = register_width_for(-r, r);
    return {requested_m ? requested_m : needed, 1.0};
  }
  const unsigned m = requested_m ? requested_m : real_bits;
  if (m < 2) throw std::invalid_argument("cost register needs at least 2 qubits");
  const double top = static_cast<double>((std::int64_t{1} << (m - 1)) - 1);
  return {m, range > 0 ? top / range : 1.0};
}

inline std::unique_ptr<AmplifiedDistribution> make_amplifier(Backend backend,
                                                             const BinaryPolynomial& poly,
                                                             std::span<const double> costs,
                                                             double threshold,
                                                             const CostEncoding& enc,
                                                             const SearchSpace& space,
                                                             const Bounds& bounds) {
  const Bounds shifted_bounds{bounds.lower - threshold, bounds.upper - threshold};
  detail::check_fits(shifted_bounds, enc);
  if (backend == Backend::kStatevector) {
    return std::make_unique<StatevectorAmplifier>(shift(poly, -threshold), enc, space,
                                                  shifted_bounds);
  }
  std::vector<double> shifted(costs.begin(), costs.end());
  for (double& c : shifted) c -= threshold;
  return std::make_unique<SubspaceAmplifier>(shifted, enc, space);
}

struct AmplifiedMeasurement {
  Assignment assignment;
  double cost = 0;
  std::uint64_t queries_used = 0;
};

/// Measures the variable register once and scores it classically.
template <class Rng>
AmplifiedMeasurement measure_amplified(const AmplifiedDistribution& dist,
                                       const BinaryPolynomial& poly, std::uint64_t rotations,
                                       Rng& rng) {
  const auto probs = dist.variable_probabilities(rotations);
  const BasisIndex x = sample_index(std::span<const double>(probs), rng);
  return {assignment_from_index(x, poly.num_vars()), poly.evaluate_index(x), rotations};
}

/// Prepares A|0> for poly - threshold, applies G `rotations` times and
/// measures once. The register is sized automatically.
inline AmplifiedMeasurement amplified_measure(const BinaryPolynomial& poly, double threshold,
                                              std::uint64_t rotations, std::uint64_t seed,
                                              Backend backend = Backend::kStatevector) {
  const auto costs = cost_table(poly);
  const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
  const Bounds bounds{std::min(*lo, threshold), std::max(*hi, threshold)};
  const CostEncoding enc = gas_encoding(poly, bounds, 0, kDefaultRealPrecisionBits);
  const SearchSpace space{poly.num_vars(), std::nullopt};
  const auto dist = make_amplifier(backend, poly, costs, threshold, enc, space, bounds);
  std::mt19937_64 rng(seed);
  return measure_amplified(*dist, poly, rotations, rng);
}

struct ThresholdChoice {
  double threshold = 0;
  Assignment assignment;
};

inline constexpr unsigned kQuantileSamples = 64;

template <class Rng>
ThresholdChoice choose_initial_threshold(const BinaryPolynomial& poly,
                                         const ThresholdStrategy& strategy,
                                         const SearchSpace& space, Rng& rng,
                                         const std::optional<Assignment>& approximate) {
  const unsigned n = poly.num_vars();
  auto from_index = [&](BasisIndex x) {
    return ThresholdChoice{poly.evaluate_index(x), assignment_from_index(x, n)};
  };
  auto quantile_pick = [&](double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile must lie in (0, 1)");
    std::vector<std::pair<double, BasisIndex>> samples;
    samples.reserve(kQuantileSamples);
    for (unsigned i = 0; i < kQuantileSamples; ++i) {
      const BasisIndex x = space.sample(rng);
      samples.emplace_back(poly.evaluate_index(x), x);
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto rank = static_cast<std::size_t>(std::ceil(q * kQuantileSamples));
    return from_index(samples[std::clamp<std::size_t>(rank, 1, kQuantileSamples) - 1].second);
  };
  auto approx_pick = [&] {
    if (!approximate) throw std::invalid_argument("no approximate solution supplied");
    if (approximate->size() != n) throw std::invalid_argument("approximate solution has wrong length");
    return from_index(assignment_index(*approximate));
  };
  switch (strategy.kind) {
    case ThresholdStrategy::Kind::kRandomSample: return from_index(space.sample(rng));
    case ThresholdStrategy::Kind::kQuantile: return quantile_pick(strategy.quantile);
    case ThresholdStrategy::Kind::kClassicalApproximate: return approx_pick();
    case ThresholdStrategy::Kind::kCombined: {
      const ThresholdChoice a = approx_pick();
      const ThresholdChoice b = quantile_pick(strategy.quantile);
      return b.threshold < a.threshold ? b : a;
    }
  }
  throw std::logic_error("unhandled strategy");
}

/// Threshold only; `seed` drives the sampling strategies.
inline double initial_threshold(const BinaryPolynomial& poly, const ThresholdStrategy& strategy,
                                std::uint64_t seed,
                                const std::optional<Assignment>& approximate = std::nullopt) {
  std::mt19937_64 rng(seed);
  return choose_initial_threshold(poly, strategy, SearchSpace{poly.num_vars(), std::nullopt}, rng,
                                  approximate)
      .threshold;
}

struct GasRound {
  double threshold = 0;
  std::uint64_t rotation_count = 0;
  Assignment measured_assignment;
  double measured_cost = 0;
  bool accepted = false;
  /// Oracle queries spent up to and including this round.
  std::uint64_t cumulative_queries = 0;
};

struct GasTrace {
  GasConfig config;
  CostEncoding encoding;
  double initial_threshold = 0;
  Assignment initial_assignment;
  std::vector<GasRound> rounds;
  std::uint64_t total_oracle_queries = 0;
  Assignment best_assignment;
  double best_cost = 0;
  /// False when the query budget ran out before the stopping rule fired.
  bool converged = false;

  /// Queries spent when an assignment of cost <= target (+tol) was first
  /// seen, counting the initial threshold assignment as zero queries.
  std::optional<std::uint64_t> queries_to_reach(double target, double tol = 1e-9) const {
    if (initial_threshold <= target + tol) return 0;
    for (const auto& r : rounds) {
      if (r.measured_cost <= target + tol) return r.cumulative_queries;
    }
    return std::nullopt;
  }
};

inline unsigned default_stall_rounds(double space_size) {
  return std::max(1U, 3U * static_cast<unsigned>(std::ceil(std::log2(std::max(1.0, space_size)))));
}

/// Adaptive loop: draw the rotation count uniformly from
/// [0, ceil(schedule) - 1], grow the schedule by lambda on failure (capped at
/// sqrt(N)) and reset it on success, lowering the threshold to every strictly
/// better measured cost. Stops after `stall_rounds` consecutive failures at
/// the full schedule, or when the oracle budget is spent.
inline GasTrace run_gas(const BinaryPolynomial& poly, const GasConfig& config) {
  config.validate();
  const SearchSpace space{poly.num_vars(), config.dicke_weight};
  space.validate();
  const auto costs = cost_table(poly);
  // Branches outside the search space carry no amplitude, so only feasible
  // costs have to fit the register.
  Bounds bounds{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (BasisIndex x = 0; x < costs.size(); ++x) {
    if (!space.contains(x)) continue;
    bounds.lower = std::min(bounds.lower, costs[x]);
    bounds.upper = std::max(bounds.upper, costs[x]);
  }

  GasTrace trace;
  trace.config = config;
  trace.encoding = gas_encoding(poly, bounds, config.m, config.real_precision_bits);
  if (poly.num_vars() + trace.encoding.m > simulator_qubit_limit()) {
    throw ResourceError("search needs " + std::to_string(poly.num_vars() + trace.encoding.m) +
                        " qubits, over the simulator limit");
  }

  // Separate streams: strategies that pick the same start then run the
  // same search.
  std::seed_seq start_seq{config.rng_seed, std::uint64_t{1}};
  std::mt19937_64 start_rng(start_seq);
  std::mt19937_64 rng(config.rng_seed);
  const ThresholdChoice start = choose_initial_threshold(
      poly, config.initial_threshold_strategy, space, start_rng, config.approximate_solution);
  trace.initial_threshold = start.threshold;
  trace.initial_assignment = start.assignment;
  trace.best_assignment = start.assignment;
  trace.best_cost = start.threshold;

  const double cap = std::max(1.0, std::sqrt(space.size()));
  const unsigned stall_limit = config.stall_rounds ? config.stall_rounds : default_stall_rounds(space.size());
  double schedule = 1.0;
  unsigned stalled = 0;
  std::unique_ptr<AmplifiedDistribution> dist;

  while (true) {
    if (trace.total_oracle_queries >= config.max_oracle_queries) {
      trace.converged = false;
      break;
    }
    if (!dist) {
      dist = make_amplifier(config.backend, poly, costs, trace.best_cost, trace.encoding, space, bounds);
    }
    const auto top = static_cast<std::uint64_t>(std::ceil(schedule)) - 1;
    std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, top)(rng);
    k = std::min(k, config.max_oracle_queries - trace.total_oracle_queries);
    const bool full_schedule = schedule >= cap;

    const AmplifiedMeasurement meas = measure_amplified(*dist, poly, k, rng);
    trace.total_oracle_queries += k;
    GasRound round{trace.best_cost, k, meas.assignment, meas.cost, false, trace.total_oracle_queries};
    if (meas.cost < trace.best_cost) {
      round.accepted = true;
      trace.best_cost = meas.cost;
      trace.best_assignment = meas.assignment;
      schedule = 1.0;
      stalled = 0;
      dist.reset();
    } else {
      schedule = std::min(schedule * config.lambda, cap);
      if (full_schedule && ++stalled >= stall_limit) {
        trace.rounds.push_back(std::move(round));
        trace.converged = true;
        break;
      }
    }
    trace.rounds.push_back(std::move(round));
  }
  return trace;
}

struct ClassicalResult {
  Assignment assignment;
  double cost = 0;
  /// 1-based position in the evaluation order where the minimum first appeared.
  std::uint64_t queries_used = 0;
};

/// Exhaustive search in a seeded random order (the card-flipping baseline).
inline ClassicalResult classical_exhaustive(const BinaryPolynomial& poly, std::uint64_t seed,
                                            unsigned var_limit = kExhaustiveVarLimit) {
  if (poly.num_vars() > var_limit) {
    throw std::length_error("exhaustive search limited to " + std::to_string(var_limit) + " variables");
  }
  const auto costs = cost_table(poly);
  std::vector<std::uint32_t> order(costs.size());
  std::iota(order.begin(), order.end(), 0U);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const double best = *std::min_element(costs.begin(), costs.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (costs[order[i]] == best) {
      return {assignment_from_index(order[i], poly.num_vars()), best, i + 1};
    }
  }
  throw std::logic_error("minimum not found");
}

}  // namespace qgas
