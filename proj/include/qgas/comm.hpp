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
 * Communication problems cast as binary polynomials: MIMO maximum-likelihood
 * detection, graph coloring with Gray-coded colors, and max-min codebook
 * selection under a Dicke-state (fixed Hamming weight) constraint.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgas/gas.hpp"
#include "qgas/grassmann.hpp"
#include "qgas/polynomial.hpp"

namespace qgas {

// ---------------------------------------------------------------- MIMO

enum class Modulation { kBpsk, kQpsk };

inline std::string to_string(Modulation m) { return m == Modulation::kBpsk ? "bpsk" : "qpsk"; }

inline Modulation parse_modulation(std::string_view s) {
  if (s == "bpsk") return Modulation::kBpsk;
  if (s == "qpsk") return Modulation::kQpsk;
  throw std::invalid_argument("unsupported modulation '" + std::string(s) + "'");
}

inline unsigned bits_per_symbol(Modulation m) { return m == Modulation::kBpsk ? 1 : 2; }

struct MimoInstance {
  unsigned num_tx = 0;
  unsigned num_rx = 0;
  Eigen::MatrixXcd channel;  // num_rx x num_tx
  Eigen::VectorXcd received;
  Modulation modulation = Modulation::kBpsk;
  double noise_variance = 0;
  std::uint64_t rng_seed = 0;
  Assignment transmitted_bits;

  unsigned num_bits() const { return num_tx * bits_per_symbol(modulation); }
};

/// BPSK: s_i = 1 - 2 b_i. QPSK (Gray, one bit per rail):
/// s_i = ((1 - 2 b_{2i}) + j (1 - 2 b_{2i+1})) / sqrt(2).
inline Eigen::VectorXcd symbols_from_bits(std::span<const std::uint8_t> bits, Modulation mod) {
  const unsigned bps = bits_per_symbol(mod);
  if (bits.size() % bps) throw std::invalid_argument("bit count does not fill whole symbols");
  Eigen::VectorXcd s(static_cast<Eigen::Index>(bits.size() / bps));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (mod == Modulation::kBpsk) {
      s[i] = Complex(1.0 - 2.0 * bits[i], 0.0);
    } else {
      s[i] = Complex(1.0 - 2.0 * bits[2 * i], 1.0 - 2.0 * bits[2 * i + 1]) / std::numbers::sqrt2;
    }
  }
  return s;
}

/// Rayleigh channel with CN(0, 1) entries, uniform bits and CN(0, sigma^2)
/// noise where sigma^2 = 10^(-snr_db / 10) per receive antenna; unit-energy
/// symbols. snr_db = +inf gives a noiseless instance.
inline MimoInstance generate_mimo(unsigned num_tx, unsigned num_rx, Modulation mod, double snr_db,
                                  std::uint64_t seed) {
  if (num_tx < 1 || num_rx < 1) throw std::invalid_argument("antenna counts must be positive");
  MimoInstance inst;
  inst.num_tx = num_tx;
  inst.num_rx = num_rx;
  inst.modulation = mod;
  inst.rng_seed = seed;
  inst.noise_variance = std::pow(10.0, -snr_db / 10.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  inst.channel.resize(num_rx, num_tx);
  for (Eigen::Index r = 0; r < inst.channel.rows(); ++r) {
    for (Eigen::Index c = 0; c < inst.channel.cols(); ++c) {
      const double re = gauss(rng);
      inst.channel(r, c) = Complex(re, gauss(rng));
    }
  }
  std::bernoulli_distribution coin(0.5);
  inst.transmitted_bits.resize(inst.num_bits());
  for (auto& b : inst.transmitted_bits) b = coin(rng) ? 1 : 0;
  inst.received = inst.channel * symbols_from_bits(inst.transmitted_bits, mod);
  const double sigma = std::sqrt(inst.noise_variance / 2.0);
  if (sigma > 0) {
    std::normal_distribution<double> noise(0.0, sigma);
    for (Eigen::Index r = 0; r < inst.received.size(); ++r) {
      const double re = noise(rng);
      inst.received[r] += Complex(re, noise(rng));
    }
  }
  return inst;
}

/// ||y - H s(b)||^2 evaluated directly.
inline double ml_cost(const MimoInstance& inst, std::span<const std::uint8_t> bits) {
  return (inst.received - inst.channel * symbols_from_bits(bits, inst.modulation)).squaredNorm();
}

/// Degree-2 polynomial equal to ||y - H s(b)||^2 for every bit vector b.
///
/// Writing s(b) = s0 + sum_k g_k b_k and h_k = H g_k, r0 = y - H s0:
///   ||r0 - sum_k h_k b_k||^2 = ||r0||^2 + sum_k (||h_k||^2 - 2 Re<r0, h_k>) b_k
///                              + sum_{k<l} 2 Re<h_k, h_l> b_k b_l.
inline BinaryPolynomial ml_cost_polynomial(const MimoInstance& inst) {
  const unsigned n = inst.num_bits();
  const Eigen::VectorXcd s0 = symbols_from_bits(Assignment(n, 0), inst.modulation);
  const Eigen::VectorXcd r0 = inst.received - inst.channel * s0;
  std::vector<Eigen::VectorXcd> h(n);
  for (unsigned k = 0; k < n; ++k) {
    Assignment e(n, 0);
    e[k] = 1;
    h[k] = inst.channel * (symbols_from_bits(e, inst.modulation) - s0);
  }
  BinaryPolynomial poly(n, r0.squaredNorm());
  for (unsigned k = 0; k < n; ++k) {
    poly.add_term(h[k].squaredNorm() - 2.0 * r0.dot(h[k]).real(), {k});
    for (unsigned l = k + 1; l < n; ++l) {
      const double c = 2.0 * h[k].dot(h[l]).real();
      if (c != 0.0) poly.add_term(c, {k, l});
    }
  }
  return poly;
}

/// Brute-force ML decision over all symbol vectors; ties go to the lowest
/// bit-vector index.
inline Assignment exhaustive_ml(const MimoInstance& inst) {
  const unsigned n = inst.num_bits();
  if (n > kExhaustiveVarLimit) throw std::length_error("too many bits for exhaustive ML");
  double best = std::numeric_limits<double>::infinity();
  BasisIndex arg = 0;
  for (BasisIndex x = 0; x < (BasisIndex{1} << n); ++x) {
    const double c = ml_cost(inst, assignment_from_index(x, n));
    if (c < best) {
      best = c;
      arg = x;
    }
  }
  return assignment_from_index(arg, n);
}

/// MMSE estimate (H^H H + sigma^2 I)^-1 H^H y, sliced per rail. A noiseless
/// instance uses zero forcing, regularized if H^H H is singular.
inline Assignment linear_detector(const MimoInstance& inst) {
  const Eigen::MatrixXcd gram = inst.channel.adjoint() * inst.channel;
  const auto dim = gram.rows();
  double reg = inst.noise_variance;
  if (reg <= 0) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
    if (lu.rank() < dim) reg = 1e-9 * std::max(1.0, gram.trace().real() / static_cast<double>(dim));
  }
  const Eigen::MatrixXcd a = gram + reg * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::VectorXcd est = a.fullPivLu().solve(inst.channel.adjoint() * inst.received);
  Assignment bits(inst.num_bits());
  for (Eigen::Index i = 0; i < est.size(); ++i) {
    if (inst.modulation == Modulation::kBpsk) {
      bits[i] = est[i].real() < 0 ? 1 : 0;
    } else {
      bits[2 * i] = est[i].real() < 0 ? 1 : 0;
      bits[2 * i + 1] = est[i].imag() < 0 ? 1 : 0;
    }
  }
  return bits;
}

inline unsigned bit_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("bit vectors differ in length");
  unsigned e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += (a[i] != b[i]);
  return e;
}

// ------------------------------------------------------------ coloring

struct ColoringInstance {
  unsigned vertices = 0;
  std::vector<std::pair<unsigned, unsigned>> edges;
  unsigned colors = 2;

  unsigned bits_per_vertex() const { return static_cast<unsigned>(std::countr_zero(colors)); }

  void validate() const {
    if (colors < 2 || !std::has_single_bit(colors)) {
      throw std::invalid_argument("color count must be a power of two >= 2");
    }
    for (auto [u, v] : edges) {
      if (u >= vertices || v >= vertices) throw std::out_of_range("edge references a missing vertex");
      if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    }
  }
};

/// Vertex v owns variables v*b .. v*b + b - 1 (b = log2 colors), holding the
/// Gray code of its color. Each edge adds prod_i (1 - a_i - c_i + 2 a_i c_i),
/// which is 1 exactly when both endpoints carry the same code.
inline BinaryPolynomial coloring_polynomial(const ColoringInstance& inst) {
  inst.validate();
  const unsigned b = inst.bits_per_vertex();
  BinaryPolynomial poly(inst.vertices * b);
  for (auto [u, v] : inst.edges) {
    std::map<std::vector<unsigned>, double> product{{{}, 1.0}};
    for (unsigned i = 0; i < b; ++i) {
      const unsigned a = u * b + i;
      const unsigned c = v * b + i;
      const std::vector<std::pair<std::vector<unsigned>, double>> factor{
          {{}, 1.0}, {{a}, -1.0}, {{c}, -1.0}, {{std::min(a, c), std::max(a, c)}, 2.0}};
      std::map<std::vector<unsigned>, double> next;
      for (const auto& [vars, coeff] : product) {
        for (const auto& [fvars, fcoeff] : factor) {
          std::vector<unsigned> merged = vars;
          merged.insert(merged.end(), fvars.begin(), fvars.end());
          std::sort(merged.begin(), merged.end());
          next[merged] += coeff * fcoeff;
        }
      }
      product = std::move(next);
    }
    for (const auto& [vars, coeff] : product) poly.add_term(coeff, vars);
  }
  return poly;
}

inline std::vector<unsigned> decode_coloring(const ColoringInstance& inst,
                                             std::span<const std::uint8_t> assignment) {
  const unsigned b = inst.bits_per_vertex();
  if (assignment.size() != static_cast<std::size_t>(inst.vertices) * b) {
    throw std::invalid_argument("assignment length does not match the coloring instance");
  }
  std::vector<unsigned> colors(inst.vertices);
  for (unsigned v = 0; v < inst.vertices; ++v) {
    colors[v] = static_cast<unsigned>(gray_decode(assignment.subspan(static_cast<std::size_t>(v) * b, b)));
  }
  return colors;
}

inline unsigned coloring_conflicts(const ColoringInstance& inst, std::span<const unsigned> colors) {
  unsigned conflicts = 0;
  for (auto [u, v] : inst.edges) conflicts += (colors[u] == colors[v]);
  return conflicts;
}

// ---------------------------------------------------- max-min codebooks

inline constexpr unsigned kMaxCandidates = 16;
inline constexpr double kDefaultPowerMeanExponent = -8.0;

struct MaxMinProblem {
  BinaryPolynomial poly;
  unsigned select = 0;
  double exponent = kDefaultPowerMeanExponent;
  std::vector<std::vector<double>> distance;

  unsigned candidates() const { return static_cast<unsigned>(distance.size()); }
};

/// One selection bit per candidate and objective sum_{i<j} d_ij^p b_i b_j.
/// For p < 0 minimizing it over weight-k selections maximizes the power
/// mean of the selected pairwise distances, a smooth stand-in for their
/// minimum. The weight constraint is left to a Dicke-state search space.
inline MaxMinProblem maxmin_codebook_polynomial(const Codebook& candidates, unsigned select,
                                                double exponent = kDefaultPowerMeanExponent) {
  const auto nc = static_cast<unsigned>(candidates.size());
  if (nc > kMaxCandidates) throw std::invalid_argument("at most 16 candidates are supported");
  if (select < 2 || select > nc) throw std::invalid_argument("selection size must lie in [2, candidates]");
  if (!(exponent < 0)) throw std::invalid_argument("power-mean exponent must be negative");
  MaxMinProblem prob;
  prob.select = select;
  prob.exponent = exponent;
  prob.poly = BinaryPolynomial(nc);
  prob.distance.assign(nc, std::vector<double>(nc, 0.0));
  for (unsigned i = 0; i < nc; ++i) {
    for (unsigned j = i + 1; j < nc; ++j) {
      const double d = chordal_distance(candidates[i], candidates[j]);
      if (d < 1e-9) {
        throw std::invalid_argument("candidates " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are the same line");
      }
      prob.distance[i][j] = prob.distance[j][i] = d;
      prob.poly.add_term(std::pow(d, exponent), {i, j});
    }
  }
  return prob;
}

namespace detail {

inline std::vector<double> selected_distances(const MaxMinProblem& prob,
                                              std::span<const std::uint8_t> selection) {
  std::vector<double> d;
  for (unsigned i = 0; i < prob.candidates(); ++i) {
    for (unsigned j = i + 1; j < prob.candidates(); ++j) {
      if (selection[i] && selection[j]) d.push_back(prob.distance[i][j]);
    }
  }
  return d;
}

}  // namespace detail

inline double min_selected_distance(const MaxMinProblem& prob, std::span<const std::uint8_t> selection) {
  const auto d = detail::selected_distances(prob, selection);
  if (d.empty()) throw std::invalid_argument("selection holds fewer than two points");
  return *std::min_element(d.begin(), d.end());
}

/// Power mean of the selected pairwise distances.
inline double maxmin_proxy(const MaxMinProblem& prob, std::span<const std::uint8_t> selection) {
  const auto d = detail::selected_distances(prob, selection);
  return power_mean_min(d, prob.exponent);
}

/// GAS over weight-k selections; the variable register starts in the
/// Dicke state so every measurement is a feasible selection.
inline GasTrace solve_maxmin(const MaxMinProblem& prob, GasConfig config) {
  config.dicke_weight = prob.select;
  return run_gas(prob.poly, config);
}

}  // namespace qgas
