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
 * Multilinear binary polynomials (QUBO/HUBO cost functions) and their
 * compilation into the phase-encoding state preparation used by Grover
 * adaptive search.
 *
 * The compiled register layout places variable x_v on qubit v and the m
 * cost qubits above them, so cost qubit j is qubit n + j and the sign
 * qubit is n + m - 1.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgas/circuit.hpp"

namespace qgas {

/// Variable values indexed by variable number; entries are 0 or 1.
using Assignment = std::vector<std::uint8_t>;

inline BasisIndex assignment_index(std::span<const std::uint8_t> bits) {
  BasisIndex x = 0;
  for (std::size_t v = 0; v < bits.size(); ++v) {
    if (bits[v]) x |= BasisIndex{1} << v;
  }
  return x;
}

inline Assignment assignment_from_index(BasisIndex x, unsigned num_vars) {
  Assignment a(num_vars);
  for (unsigned v = 0; v < num_vars; ++v) a[v] = static_cast<std::uint8_t>((x >> v) & 1U);
  return a;
}

/// Renders x_0 first, e.g. "10" for x_0 = 1, x_1 = 0.
inline std::string assignment_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

class RegisterOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class BinaryPolynomial {
 public:
  using TermMap = std::map<std::vector<unsigned>, double>;

  BinaryPolynomial() = default;
  explicit BinaryPolynomial(unsigned num_vars, double constant = 0.0)
      : num_vars_(num_vars), constant_(constant) {}

  /// Adds coeff * prod_{v in vars} x_v. Coefficients of equal variable sets
  /// are merged and cancelled terms are dropped. A repeated index is an
  /// error rather than being reduced with x^2 = x.
  BinaryPolynomial& add_term(double coeff, std::vector<unsigned> vars) {
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
      throw std::invalid_argument("repeated variable index in a term");
    }
    if (!vars.empty() && vars.back() >= num_vars_) {
      throw std::out_of_range("variable x_" + std::to_string(vars.back()) + " outside " +
                              std::to_string(num_vars_) + " variables");
    }
    if (vars.empty()) {
      constant_ += coeff;
      return *this;
    }
    auto [it, inserted] = terms_.emplace(std::move(vars), coeff);
    if (!inserted) it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
    return *this;
  }

  unsigned num_vars() const { return num_vars_; }
  double constant() const { return constant_; }
  const TermMap& terms() const { return terms_; }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [vars, c] : terms_) d = std::max<unsigned>(d, static_cast<unsigned>(vars.size()));
    return d;
  }

  bool is_integral() const {
    auto integral = [](double c) { return std::isfinite(c) && std::nearbyint(c) == c; };
    if (!integral(constant_)) return false;
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return integral(t.second); });
  }

  double evaluate(std::span<const std::uint8_t> assignment) const {
    if (assignment.size() != num_vars_) {
      throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                  " bits for " + std::to_string(num_vars_) + " variables");
    }
    return evaluate_index(assignment_index(assignment));
  }

  /// Evaluates with bit v of `x` as the value of x_v.
  double evaluate_index(BasisIndex x) const {
    double sum = constant_;
    for (const auto& [vars, c] : terms_) {
      bool on = true;
      for (unsigned v : vars) {
        if (!((x >> v) & 1U)) {
          on = false;
          break;
        }
      }
      if (on) sum += c;
    }
    return sum;
  }

  bool operator==(const BinaryPolynomial&) const = default;

 private:
  unsigned num_vars_ = 0;
  double constant_ = 0.0;
  TermMap terms_;
};

/// Every evaluation shifted by `delta`.
inline BinaryPolynomial shift(const BinaryPolynomial& poly, double delta) {
  BinaryPolynomial out = poly;
  out.add_term(delta, {});
  return out;
}

inline constexpr unsigned kExhaustiveVarLimit = 24;

/// All 2^n costs, indexed by assignment_index.
inline std::vector<double> cost_table(const BinaryPolynomial& poly) {
  if (poly.num_vars() > kExhaustiveVarLimit) {
    throw std::length_error("cost table limited to " + std::to_string(kExhaustiveVarLimit) +
                            " variables");
  }
  const BasisIndex n = BasisIndex{1} << poly.num_vars();
  std::vector<double> table(n, poly.constant());
  for (const auto& [vars, c] : poly.terms()) {
    BasisIndex mask = 0;
    for (unsigned v : vars) mask |= BasisIndex{1} << v;
    for (BasisIndex x = mask; x < n; x = (x + 1) | mask) table[x] += c;
  }
  return table;
}

struct Bounds {
  double lower = 0;
  double upper = 0;
  bool operator==(const Bounds&) const = default;
};

/// Sound interval from the signs of the coefficients.
inline Bounds cost_bounds(const BinaryPolynomial& poly) {
  Bounds b{poly.constant(), poly.constant()};
  for (const auto& [vars, c] : poly.terms()) {
    if (c < 0) b.lower += c;
    else b.upper += c;
  }
  return b;
}

inline constexpr unsigned kExactBoundsVarLimit = 20;

/// Tight interval by exhaustive evaluation (n <= 20).
inline Bounds exact_cost_bounds(const BinaryPolynomial& poly) {
  if (poly.num_vars() > kExactBoundsVarLimit) {
    throw std::length_error("exact bounds limited to " + std::to_string(kExactBoundsVarLimit) +
                            " variables");
  }
  const auto table = cost_table(poly);
  auto [lo, hi] = std::minmax_element(table.begin(), table.end());
  return {*lo, *hi};
}

inline Bounds best_bounds(const BinaryPolynomial& poly) {
  return poly.num_vars() <= kExactBoundsVarLimit ? exact_cost_bounds(poly) : cost_bounds(poly);
}

/// Width and coefficient scale of the two's-complement cost register.
struct CostEncoding {
  unsigned m = 2;
  double scale = 1.0;

  std::int64_t min_value() const { return -(std::int64_t{1} << (m - 1)); }
  std::int64_t max_value() const { return (std::int64_t{1} << (m - 1)) - 1; }

  /// Register integer nearest to the scaled cost.
  std::int64_t quantize(double cost) const { return static_cast<std::int64_t>(std::llround(scale * cost)); }

  bool fits(double cost) const {
    const auto q = quantize(cost);
    return q >= min_value() && q <= max_value();
  }

  bool operator==(const CostEncoding&) const = default;
};

inline BasisIndex to_twos_complement(std::int64_t value, unsigned m) {
  return static_cast<BasisIndex>(value) & ((BasisIndex{1} << m) - 1);
}

inline std::int64_t from_twos_complement(BasisIndex code, unsigned m) {
  const BasisIndex sign = BasisIndex{1} << (m - 1);
  return (code & sign) ? static_cast<std::int64_t>(code) - (std::int64_t{1} << m)
                       : static_cast<std::int64_t>(code);
}

/// Smallest m >= 2 with [lower, upper] inside [-2^(m-1), 2^(m-1) - 1].
inline unsigned register_width_for(std::int64_t lower, std::int64_t upper) {
  unsigned m = 2;
  while (m < 62) {
    const std::int64_t half = std::int64_t{1} << (m - 1);
    if (lower >= -half && upper <= half - 1) return m;
    ++m;
  }
  throw RegisterOverflow("cost range too wide for a 62-qubit register");
}

inline constexpr unsigned kDefaultRealPrecisionBits = 7;

/// Integer polynomials: smallest width holding the sound bounds at scale 1.
/// Real polynomials: `real_bits` qubits with the scale chosen so the sound
/// bounds fill the register.
inline CostEncoding choose_register_width(const BinaryPolynomial& poly,
                                          unsigned real_bits = kDefaultRealPrecisionBits) {
  const Bounds b = cost_bounds(poly);
  if (poly.is_integral()) {
    return {register_width_for(static_cast<std::int64_t>(b.lower), static_cast<std::int64_t>(b.upper)), 1.0};
  }
  if (real_bits < 2) throw std::invalid_argument("cost register needs at least 2 qubits");
  const double extent = std::max(std::abs(b.lower), std::abs(b.upper));
  const double top = static_cast<double>((std::int64_t{1} << (real_bits - 1)) - 1);
  return {real_bits, extent > 0 ? top / extent : 1.0};
}

namespace detail {

inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  return a;
}

inline void check_fits(const Bounds& b, const CostEncoding& enc) {
  if (enc.m < 2 || enc.m > 62) throw std::invalid_argument("cost register width must be in [2, 62]");
  if (!enc.fits(b.lower) || !enc.fits(b.upper)) {
    std::ostringstream os;
    os << "costs in [" << b.lower << ", " << b.upper << "] at scale " << enc.scale
       << " overflow a " << enc.m << "-qubit two's-complement register";
    throw RegisterOverflow(os.str());
  }
}

}  // namespace detail

/// Phase-encoding gates and IQFT for the cost register, without the
/// Hadamard layer on the variable register. Pair with any variable-register
/// initial state (uniform or Dicke). `bounds` must contain every cost.
inline Circuit compile_cost_encoding(const BinaryPolynomial& poly, const CostEncoding& enc,
                                     const Bounds& bounds) {
  detail::check_fits(bounds, enc);
  const unsigned n = poly.num_vars();
  const unsigned m = enc.m;
  Circuit circuit(n + m);
  for (unsigned j = 0; j < m; ++j) circuit.add(Gate::h(n + j));
  const double unit = 2.0 * std::numbers::pi * enc.scale / std::ldexp(1.0, static_cast<int>(m));
  auto emit = [&](double coeff, const std::vector<unsigned>& vars) {
    for (unsigned j = 0; j < m; ++j) {
      const double angle = detail::wrap_angle(unit * coeff * std::ldexp(1.0, static_cast<int>(j)));
      if (angle == 0.0) continue;
      circuit.add(Gate::mc_phase(angle, n + j, vars));
    }
  };
  if (poly.constant() != 0.0) emit(poly.constant(), {});
  for (const auto& [vars, c] : poly.terms()) emit(c, vars);
  circuit.add(Gate::iqft(n, m));
  return circuit;
}

inline Circuit compile_cost_encoding(const BinaryPolynomial& poly, const CostEncoding& enc) {
  return compile_cost_encoding(poly, enc, best_bounds(poly));
}

/// The state-preparation operator on n + m qubits: Hadamards everywhere,
/// one controlled phase per (term, cost qubit), then the IQFT. Applied to
/// |0...0>, branch x holds round(scale * f(x)) mod 2^m in the cost register.
inline Circuit compile_state_prep(const BinaryPolynomial& poly, const CostEncoding& enc,
                                  const Bounds& bounds) {
  Circuit circuit(poly.num_vars() + enc.m);
  for (unsigned v = 0; v < poly.num_vars(); ++v) circuit.add(Gate::h(v));
  circuit.append(compile_cost_encoding(poly, enc, bounds));
  return circuit;
}

inline Circuit compile_state_prep(const BinaryPolynomial& poly, const CostEncoding& enc) {
  return compile_state_prep(poly, enc, best_bounds(poly));
}

/// Merges diagonal phase gates acting on the same qubit set inside each run
/// of consecutive diagonal gates (they commute), dropping angles that sum to
/// a multiple of 2*pi. Non-diagonal gates are kept in place.
inline Circuit merge_diagonal_phases(const Circuit& circuit) {
  Circuit out(circuit.num_qubits());
  std::vector<std::pair<std::vector<unsigned>, double>> run;
  auto flush = [&] {
    for (auto& [qubits, angle] : run) {
      const double a = detail::wrap_angle(angle);
      if (a == 0.0 || std::abs(a - 2.0 * std::numbers::pi) < 1e-15) continue;
      std::vector<unsigned> controls(qubits.begin(), qubits.end() - 1);
      out.add(Gate::mc_phase(a, qubits.back(), std::move(controls)));
    }
    run.clear();
  };
  for (const Gate& g : circuit.gates()) {
    if (!g.is_diagonal()) {
      flush();
      out.add(g);
      continue;
    }
    double angle = g.angle;
    if (g.kind == GateKind::kZ) angle = std::numbers::pi;
    if (g.kind == GateKind::kS) angle = std::numbers::pi / 2;
    std::vector<unsigned> qubits = g.controls;
    qubits.push_back(g.target);
    std::sort(qubits.begin(), qubits.end());
    auto it = std::find_if(run.begin(), run.end(), [&](const auto& e) { return e.first == qubits; });
    if (it == run.end()) run.emplace_back(std::move(qubits), angle);
    else it->second += angle;
  }
  flush();
  return out;
}

/// Greedy layer count: each gate occupies its target, controls, and for
/// register gates the whole register.
inline std::size_t circuit_depth(const Circuit& circuit) {
  std::vector<std::size_t> level(circuit.num_qubits(), 0);
  std::size_t depth = 0;
  for (const Gate& g : circuit.gates()) {
    std::vector<unsigned> qs = g.controls;
    if (g.is_register_gate()) {
      for (unsigned q = g.target; q < g.target + g.width; ++q) qs.push_back(q);
    } else {
      qs.push_back(g.target);
    }
    std::size_t l = 0;
    for (unsigned q : qs) l = std::max(l, level[q]);
    for (unsigned q : qs) level[q] = l + 1;
    depth = std::max(depth, l + 1);
  }
  return depth;
}

/// Reflected binary Gray code; element b is bit b of the code.
inline std::vector<std::uint8_t> gray_encode(std::uint64_t value, unsigned bits) {
  if (bits > 63 || value >= (std::uint64_t{1} << bits)) {
    throw std::out_of_range("value " + std::to_string(value) + " does not fit in " +
                            std::to_string(bits) + " bits");
  }
  const std::uint64_t code = value ^ (value >> 1);
  std::vector<std::uint8_t> out(bits);
  for (unsigned b = 0; b < bits; ++b) out[b] = static_cast<std::uint8_t>((code >> b) & 1U);
  return out;
}

inline std::uint64_t gray_decode(std::span<const std::uint8_t> code_bits) {
  std::uint64_t code = 0;
  for (std::size_t b = 0; b < code_bits.size(); ++b) {
    if (code_bits[b]) code |= std::uint64_t{1} << b;
  }
  std::uint64_t value = code;
  for (std::uint64_t s = code >> 1; s != 0; s >>= 1) value ^= s;
  return value;
}

/// ((1/k) sum v_i^p)^(1/p) for p < 0; tends to min(values) as p -> -inf.
inline double power_mean_min(std::span<const double> values, double p) {
  if (values.empty()) throw std::invalid_argument("power mean of no values");
  if (!(p < 0)) throw std::invalid_argument("power-mean exponent must be negative");
  double sum = 0;
  for (double v : values) {
    if (!(v > 0)) throw std::domain_error("power mean needs positive values");
    sum += std::pow(v, p);
  }
  return std::pow(sum / static_cast<double>(values.size()), 1.0 / p);
}

/// Syntax error in a polynomial file, carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "trailing characters in number '" + tok + "'");
  return v;
}

inline unsigned parse_variable(const std::string& tok, std::size_t line) {
  if (tok.size() < 3 || tok[0] != 'x' || tok[1] != '_') {
    throw ParseError(line, "expected a variable like x_3, got '" + tok + "'");
  }
  const std::string digits = tok.substr(2);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(line, "bad variable index in '" + tok + "'");
  }
  return static_cast<unsigned>(std::stoul(digits));
}

}  // namespace detail

/// Reads the text form: one term per line as `coeff * x_i [* x_j ...]`, a
/// bare number for a constant, `#` comments. The variable count is one past
/// the largest index unless `num_vars` is larger.
inline BinaryPolynomial parse_polynomial(std::istream& in, unsigned num_vars = 0) {
  std::vector<std::pair<double, std::vector<unsigned>>> entries;
  std::string raw;
  std::size_t line = 0;
  unsigned needed = num_vars;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string text = detail::trim(raw);
    if (text.empty()) continue;
    if (text.back() == '*') throw ParseError(line, "empty factor");
    std::vector<std::string> factors;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, '*')) factors.push_back(detail::trim(piece));
    if (factors.empty() || factors.front().empty()) throw ParseError(line, "missing coefficient");
    const double coeff = detail::parse_number(factors.front(), line);
    std::vector<unsigned> vars;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      if (factors[i].empty()) throw ParseError(line, "empty factor");
      vars.push_back(detail::parse_variable(factors[i], line));
    }
    std::vector<unsigned> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(line, "repeated variable in term");
    }
    if (!sorted.empty()) needed = std::max(needed, sorted.back() + 1);
    entries.emplace_back(coeff, std::move(vars));
  }
  BinaryPolynomial poly(needed);
  for (auto& [c, vars] : entries) poly.add_term(c, std::move(vars));
  return poly;
}

inline void write_polynomial(std::ostream& out, const BinaryPolynomial& poly) {
  const auto old = out.precision(17);
  if (poly.constant() != 0.0) out << poly.constant() << '\n';
  for (const auto& [vars, c] : poly.terms()) {
    out << c;
    for (unsigned v : vars) out << " * x_" << v;
    out << '\n';
  }
  out.precision(old);
}

}  // namespace qgas
