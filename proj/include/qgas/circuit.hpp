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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qgas {

using BasisIndex = std::uint64_t;

/// Most-significant-first rendering of the low `width` bits of `index`.
inline std::string to_bitstring(BasisIndex index, unsigned width) {
  std::string out(width, '0');
  for (unsigned b = 0; b < width; ++b) {
    if ((index >> b) & 1U) out[width - 1 - b] = '1';
  }
  return out;
}

inline BasisIndex parse_bitstring(std::string_view bits) {
  if (bits.size() > 63) throw std::invalid_argument("bitstring longer than 63 bits");
  BasisIndex index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring may only contain '0' and '1'");
    }
    index = (index << 1) | static_cast<BasisIndex>(c == '1');
  }
  return index;
}

enum class GateKind { kH, kX, kY, kZ, kS, kPhase, kIqft, kQft };

/// A gate acting on one target qubit, optionally conditioned on a set of
/// control qubits. The register kinds (kIqft, kQft) act on the contiguous
/// range [target, target + width) with bit `target` as the least-significant
/// register bit.
struct Gate {
  GateKind kind = GateKind::kH;
  unsigned target = 0;
  std::vector<unsigned> controls;
  double angle = 0.0;
  unsigned width = 1;

  static Gate h(unsigned q) { return {GateKind::kH, q, {}, 0.0, 1}; }
  static Gate x(unsigned q) { return {GateKind::kX, q, {}, 0.0, 1}; }
  static Gate y(unsigned q) { return {GateKind::kY, q, {}, 0.0, 1}; }
  static Gate z(unsigned q) { return {GateKind::kZ, q, {}, 0.0, 1}; }
  static Gate s(unsigned q) { return {GateKind::kS, q, {}, 0.0, 1}; }
  static Gate phase(double angle, unsigned q) {
    return {GateKind::kPhase, q, {}, angle, 1};
  }
  static Gate cnot(unsigned control, unsigned target) {
    return {GateKind::kX, target, {control}, 0.0, 1};
  }
  static Gate mc_phase(double angle, unsigned target, std::vector<unsigned> controls) {
    return {GateKind::kPhase, target, std::move(controls), angle, 1};
  }
  static Gate iqft(unsigned lo, unsigned width) {
    return {GateKind::kIqft, lo, {}, 0.0, width};
  }
  static Gate qft(unsigned lo, unsigned width) {
    return {GateKind::kQft, lo, {}, 0.0, width};
  }

  bool is_register_gate() const { return kind == GateKind::kIqft || kind == GateKind::kQft; }

  bool is_diagonal() const {
    return kind == GateKind::kZ || kind == GateKind::kS || kind == GateKind::kPhase;
  }

  /// Row-major 2x2 unitary of a single-qubit kind.
  std::array<std::complex<double>, 4> matrix() const {
    using C = std::complex<double>;
    const double r = 1.0 / std::numbers::sqrt2;
    switch (kind) {
      case GateKind::kH: return {C(r), C(r), C(r), C(-r)};
      case GateKind::kX: return {C(0), C(1), C(1), C(0)};
      case GateKind::kY: return {C(0), C(0, -1), C(0, 1), C(0)};
      case GateKind::kZ: return {C(1), C(0), C(0), C(-1)};
      case GateKind::kS: return {C(1), C(0), C(0), C(0, 1)};
      case GateKind::kPhase: return {C(1), C(0), C(0), std::polar(1.0, angle)};
      default: throw std::logic_error("register gates have no 2x2 matrix");
    }
  }

  Gate inverse() const {
    Gate g = *this;
    switch (kind) {
      case GateKind::kS:
        g.kind = GateKind::kPhase;
        g.angle = -std::numbers::pi / 2;
        break;
      case GateKind::kPhase: g.angle = -angle; break;
      case GateKind::kIqft: g.kind = GateKind::kQft; break;
      case GateKind::kQft: g.kind = GateKind::kIqft; break;
      default: break;
    }
    return g;
  }

  unsigned highest_qubit() const {
    unsigned hi = is_register_gate() ? target + width - 1 : target;
    for (unsigned c : controls) hi = std::max(hi, c);
    return hi;
  }

  std::string name() const {
    switch (kind) {
      case GateKind::kH: return "H";
      case GateKind::kX: return controls.empty() ? "X" : "CX";
      case GateKind::kY: return "Y";
      case GateKind::kZ: return "Z";
      case GateKind::kS: return "S";
      case GateKind::kPhase: return controls.empty() ? "P" : "MCP";
      case GateKind::kIqft: return "IQFT";
      case GateKind::kQft: return "QFT";
    }
    return "?";
  }

  std::string to_string() const {
    std::ostringstream os;
    os << name();
    if (kind == GateKind::kPhase) os << "(" << angle << ")";
    if (is_register_gate()) {
      os << " [" << target << ", " << target + width << ")";
    } else {
      os << " " << target;
    }
    for (unsigned c : controls) os << " c" << c;
    return os.str();
  }

  bool operator==(const Gate&) const = default;
};

/// Ordered gate list on a fixed register. Every added gate is validated
/// against the register size.
class Circuit {
 public:
  explicit Circuit(unsigned num_qubits = 0) : num_qubits_(num_qubits) {}

  unsigned num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Circuit& add(Gate gate) {
    validate(gate);
    std::sort(gate.controls.begin(), gate.controls.end());
    gates_.push_back(std::move(gate));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.num_qubits_ != num_qubits_) {
      throw std::invalid_argument("cannot append circuits of different register sizes");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  /// Adjoint: reversed order, each gate inverted.
  Circuit inverse() const {
    Circuit out(num_qubits_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
    return out;
  }

 private:
  void validate(const Gate& gate) const {
    if (gate.is_register_gate()) {
      if (gate.width == 0) throw std::invalid_argument("register gate on an empty register");
      if (!gate.controls.empty()) {
        throw std::invalid_argument("controlled register gates are not supported");
      }
    }
    if (gate.highest_qubit() >= num_qubits_) {
      throw std::out_of_range("gate " + gate.to_string() + " exceeds register of " +
                              std::to_string(num_qubits_) + " qubits");
    }
    std::vector<unsigned> c = gate.controls;
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw std::invalid_argument("duplicate control qubit in " + gate.to_string());
    }
    if (std::find(c.begin(), c.end(), gate.target) != c.end()) {
      throw std::invalid_argument("control overlaps target in " + gate.to_string());
    }
  }

  unsigned num_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace qgas
