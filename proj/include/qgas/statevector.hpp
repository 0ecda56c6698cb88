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
 * Dense statevector simulation: gate application, special-state
 * preparation, the register Fourier transforms and seeded measurement.
 *
 * Qubit q corresponds to bit q of the basis index, so qubit 0 is the
 * least-significant qubit. Bitstrings are rendered most-significant-first.
 */

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgas/circuit.hpp"

namespace qgas {

inline constexpr unsigned kDefaultMaxQubits = 26;

/// Raised when a register would exceed the simulator memory cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Qubit cap for dense states; QGAS_MAX_QUBITS overrides the default.
inline unsigned simulator_qubit_limit() {
  if (const char* env = std::getenv("QGAS_MAX_QUBITS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 40) return static_cast<unsigned>(v);
  }
  return kDefaultMaxQubits;
}

template <std::floating_point Real>
class BasicStateVector {
 public:
  using real_type = Real;
  using complex_type = std::complex<Real>;

  /// |0...0> on `num_qubits` qubits.
  explicit BasicStateVector(unsigned num_qubits, unsigned qubit_limit = simulator_qubit_limit())
      : num_qubits_(num_qubits) {
    if (num_qubits > qubit_limit) {
      throw ResourceError("register of " + std::to_string(num_qubits) +
                          " qubits exceeds simulator limit of " + std::to_string(qubit_limit));
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, complex_type{0});
    amplitudes_[0] = 1;
  }

  /// Adopts `amps` as the state. The length must be a power of two and the
  /// norm must be one within `tolerance`.
  static BasicStateVector from_amplitudes(std::vector<complex_type> amps,
                                          double tolerance = 1e-10) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
      throw std::invalid_argument("amplitude count must be a power of two");
    }
    BasicStateVector out(static_cast<unsigned>(std::countr_zero(amps.size())));
    out.amplitudes_ = std::move(amps);
    if (std::abs(out.norm_squared() - 1.0) > tolerance) {
      throw std::domain_error("amplitudes are not normalized");
    }
    return out;
  }

  unsigned num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<const complex_type> amplitudes() const { return amplitudes_; }
  /// Raw access for kernels; callers are responsible for keeping the norm.
  std::span<complex_type> mutable_amplitudes() { return amplitudes_; }

  const complex_type& operator[](BasisIndex i) const { return amplitudes_[i]; }

  Real norm_squared() const {
    Real sum = 0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return sum;
  }

 private:
  unsigned num_qubits_;
  std::vector<complex_type> amplitudes_;
};

using StateVector = BasicStateVector<double>;

namespace detail {

inline BasisIndex mask_of(const std::vector<unsigned>& qubits) {
  BasisIndex m = 0;
  for (unsigned q : qubits) m |= BasisIndex{1} << q;
  return m;
}

// Multiplies every amplitude whose index contains all bits of `mask`.
template <class C>
void scale_supersets(std::span<C> amps, BasisIndex mask, C factor) {
  const BasisIndex dim = amps.size();
  for (BasisIndex i = mask; i < dim; i = (i + 1) | mask) amps[i] *= factor;
}

template <class C>
void apply_2x2(std::span<C> amps, unsigned target, BasisIndex control_mask,
               const std::array<std::complex<double>, 4>& m) {
  const BasisIndex tbit = BasisIndex{1} << target;
  const BasisIndex dim = amps.size();
  const C m00(m[0]), m01(m[1]), m10(m[2]), m11(m[3]);
  for (BasisIndex i = control_mask; i < dim; i = (i + 1) | control_mask) {
    if (i & tbit) continue;
    const C a0 = amps[i];
    const C a1 = amps[i | tbit];
    amps[i] = m00 * a0 + m01 * a1;
    amps[i | tbit] = m10 * a0 + m11 * a1;
  }
}

template <class C>
void swap_pairs(std::span<C> amps, unsigned target, BasisIndex control_mask) {
  const BasisIndex tbit = BasisIndex{1} << target;
  const BasisIndex dim = amps.size();
  for (BasisIndex i = control_mask; i < dim; i = (i + 1) | control_mask) {
    if (!(i & tbit)) std::swap(amps[i], amps[i | tbit]);
  }
}

// Dense DFT on the register [lo, lo + width). sign = -1 gives the inverse
// transform |j> -> 2^{-w/2} sum_y exp(-2 pi i j y / 2^w) |y>.
template <class C>
void register_dft(std::span<C> amps, unsigned lo, unsigned width, int sign) {
  using Real = typename C::value_type;
  const BasisIndex m = BasisIndex{1} << width;
  const Real norm = Real(1) / std::sqrt(static_cast<Real>(m));
  std::vector<C> roots(m);
  for (BasisIndex r = 0; r < m; ++r) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
    roots[r] = C(static_cast<Real>(std::cos(angle)), static_cast<Real>(std::sin(angle))) * norm;
  }
  const BasisIndex dim = amps.size();
  const BasisIndex low_count = BasisIndex{1} << lo;
  const BasisIndex high_count = dim >> (lo + width);
  std::vector<C> in(m);
  for (BasisIndex hi = 0; hi < high_count; ++hi) {
    for (BasisIndex low = 0; low < low_count; ++low) {
      const BasisIndex base = (hi << (lo + width)) | low;
      for (BasisIndex j = 0; j < m; ++j) in[j] = amps[base | (j << lo)];
      for (BasisIndex y = 0; y < m; ++y) {
        C acc{0};
        for (BasisIndex j = 0; j < m; ++j) acc += roots[(j * y) & (m - 1)] * in[j];
        amps[base | (y << lo)] = acc;
      }
    }
  }
}

}  // namespace detail

/// Left-multiplies the state by `gate` extended by identity.
template <std::floating_point Real>
void apply_gate(BasicStateVector<Real>& state, const Gate& gate) {
  using C = std::complex<Real>;
  if (gate.highest_qubit() >= state.num_qubits()) {
    throw std::out_of_range("gate " + gate.to_string() + " exceeds state of " +
                            std::to_string(state.num_qubits()) + " qubits");
  }
  auto amps = state.mutable_amplitudes();
  const BasisIndex controls = detail::mask_of(gate.controls);
  const BasisIndex tbit = BasisIndex{1} << gate.target;
  switch (gate.kind) {
    case GateKind::kX:
      detail::swap_pairs(amps, gate.target, controls);
      break;
    case GateKind::kZ:
      detail::scale_supersets(amps, controls | tbit, C(-1));
      break;
    case GateKind::kS:
      detail::scale_supersets(amps, controls | tbit, C(0, 1));
      break;
    case GateKind::kPhase: {
      const auto f = std::polar(1.0, gate.angle);
      detail::scale_supersets(amps, controls | tbit, C(static_cast<Real>(f.real()), static_cast<Real>(f.imag())));
      break;
    }
    case GateKind::kH:
    case GateKind::kY:
      detail::apply_2x2(amps, gate.target, controls, gate.matrix());
      break;
    case GateKind::kIqft:
      detail::register_dft(amps, gate.target, gate.width, -1);
      break;
    case GateKind::kQft:
      detail::register_dft(amps, gate.target, gate.width, +1);
      break;
  }
}

template <std::floating_point Real>
void apply_circuit(BasicStateVector<Real>& state, const Circuit& circuit) {
  if (circuit.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                " qubits but state has " + std::to_string(state.num_qubits()));
  }
  for (const Gate& g : circuit.gates()) apply_gate(state, g);
}

/// Inverse Fourier transform on the contiguous register [lo, lo + width).
template <std::floating_point Real>
void apply_iqft(BasicStateVector<Real>& state, unsigned lo, unsigned width) {
  if (width == 0) throw std::invalid_argument("IQFT on an empty register");
  apply_gate(state, Gate::iqft(lo, width));
}

template <std::floating_point Real>
void apply_qft(BasicStateVector<Real>& state, unsigned lo, unsigned width) {
  if (width == 0) throw std::invalid_argument("QFT on an empty register");
  apply_gate(state, Gate::qft(lo, width));
}

inline StateVector uniform_superposition(unsigned num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("uniform superposition needs at least one qubit");
  StateVector state(num_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(state.size()));
  for (auto& amp : state.mutable_amplitudes()) amp = a;
  return state;
}

/// Equal-weight superposition over all basis states of Hamming weight `k`,
/// assigned directly rather than built from gates.
inline StateVector dicke_state(unsigned num_qubits, unsigned k) {
  if (k > num_qubits) {
    throw std::invalid_argument("Dicke weight " + std::to_string(k) + " exceeds " +
                                std::to_string(num_qubits) + " qubits");
  }
  StateVector state(num_qubits);
  auto amps = state.mutable_amplitudes();
  std::size_t count = 0;
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    if (static_cast<unsigned>(std::popcount(i)) == k) ++count;
  }
  const double a = 1.0 / std::sqrt(static_cast<double>(count));
  for (BasisIndex i = 0; i < amps.size(); ++i) {
    amps[i] = static_cast<unsigned>(std::popcount(i)) == k ? a : 0.0;
  }
  return state;
}

/// Real data normalized into the amplitudes of log2(size) qubits.
inline StateVector amplitude_embed(std::span<const double> data) {
  if (data.empty() || !std::has_single_bit(data.size())) {
    throw std::invalid_argument("embedding length must be a power of two");
  }
  double sum = 0;
  for (double v : data) sum += v * v;
  if (sum == 0) throw std::domain_error("cannot normalize an all-zero vector");
  const double inv = 1.0 / std::sqrt(sum);
  std::vector<std::complex<double>> amps(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) amps[i] = data[i] * inv;
  return StateVector::from_amplitudes(std::move(amps));
}

struct MeasurementOutcome {
  BasisIndex index = 0;
  unsigned num_qubits = 0;
  double probability = 0;

  std::string bitstring() const { return to_bitstring(index, num_qubits); }
};

/// Draws an index from unnormalized non-negative weights with one uniform
/// draw; shared by every sampling path so equal weights give equal draws.
template <class Rng>
BasisIndex sample_index(std::span<const double> weights, Rng& rng) {
  double total = 0;
  for (double w : weights) total += w;
  if (!(total > 0)) throw std::domain_error("cannot sample from zero weights");
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * total;
  double acc = 0;
  BasisIndex last_nonzero = 0;
  for (BasisIndex i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    acc += weights[i];
    last_nonzero = i;
    if (acc > u) return i;
  }
  return last_nonzero;
}

template <std::floating_point Real>
std::vector<double> probabilities(const BasicStateVector<Real>& state) {
  std::vector<double> p(state.size());
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(std::norm(amps[i]));
  return p;
}

template <std::floating_point Real, class Rng>
MeasurementOutcome measure_all(const BasicStateVector<Real>& state, Rng& rng) {
  if (std::abs(static_cast<double>(state.norm_squared()) - 1.0) > 1e-10) {
    throw std::domain_error("cannot measure an unnormalized state");
  }
  const auto p = probabilities(state);
  const BasisIndex i = sample_index(std::span<const double>(p), rng);
  return {i, state.num_qubits(), p[i]};
}

/// Single seeded measurement; the same seed always gives the same outcome.
template <std::floating_point Real>
MeasurementOutcome measure_all(const BasicStateVector<Real>& state, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return measure_all(state, rng);
}

template <std::floating_point Real>
double probability_of(const BasicStateVector<Real>& state, BasisIndex index) {
  if (index >= state.size()) throw std::out_of_range("basis index out of range");
  return static_cast<double>(std::norm(state[index]));
}

/// `bitstring` is most-significant-first and must name every qubit.
template <std::floating_point Real>
double probability_of(const BasicStateVector<Real>& state, std::string_view bitstring) {
  if (bitstring.size() != state.num_qubits()) {
    throw std::invalid_argument("bitstring has " + std::to_string(bitstring.size()) +
                                " bits but state has " + std::to_string(state.num_qubits()) +
                                " qubits");
  }
  return probability_of(state, parse_bitstring(bitstring));
}

template <std::floating_point Real>
std::complex<Real> inner_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner product of unequal registers");
  std::complex<Real> acc{0};
  auto x = a.amplitudes();
  auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

/// Compares two states modulo a global phase, aligning both on the
/// largest-magnitude amplitude of `a`.
template <std::floating_point Real>
bool equal_up_to_global_phase(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b,
                              double tolerance = 1e-10) {
  if (a.size() != b.size()) return false;
  auto x = a.amplitudes();
  auto y = b.amplitudes();
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs(x[i]) > std::abs(x[pivot])) pivot = i;
  }
  if (std::abs(y[pivot]) < 1e-300) return std::abs(x[pivot]) <= tolerance;
  const std::complex<Real> rot = (x[pivot] / std::abs(x[pivot])) / (y[pivot] / std::abs(y[pivot]));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - rot * y[i]) > tolerance) return false;
  }
  return true;
}

}  // namespace qgas
