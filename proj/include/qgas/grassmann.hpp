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
 * Lines in C^d: pure states modulo global phase, which are also the
 * points of a Grassmannian precoding codebook. Fidelity |<u,v>|^2 and
 * chordal distance sqrt(1 - F) are the shared metrics.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgas {

using Complex = std::complex<double>;

/// Unit vector stored with its first non-negligible coordinate real and
/// non-negative, so equal lines have equal storage.
class PureState {
 public:
  /// `v` must have unit norm within 1e-10.
  explicit PureState(std::vector<Complex> v) : v_(std::move(v)) {
    if (v_.size() < 2) throw std::invalid_argument("pure state needs dimension >= 2");
    if (std::abs(norm_squared(v_) - 1.0) > 1e-10) {
      throw std::domain_error("pure state is not unit norm");
    }
    canonicalize();
  }

  /// Rescales any nonzero vector to unit norm.
  static PureState normalized(std::vector<Complex> v) {
    const double n2 = norm_squared(v);
    if (!(n2 > 0)) throw std::domain_error("cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return PureState(std::move(v));
  }

  std::size_t dimension() const { return v_.size(); }
  const std::vector<Complex>& coords() const { return v_; }
  const Complex& operator[](std::size_t i) const { return v_[i]; }

 private:
  static double norm_squared(const std::vector<Complex>& v) {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return s;
  }

  void canonicalize() {
    for (const auto& c : v_) {
      if (std::abs(c) > 1e-12) {
        const Complex rot = std::conj(c) / std::abs(c);
        for (auto& x : v_) x *= rot;
        return;
      }
    }
  }

  std::vector<Complex> v_;
};

inline double fidelity(const PureState& u, const PureState& v) {
  if (u.dimension() != v.dimension()) throw std::invalid_argument("fidelity of unequal dimensions");
  Complex ip{0};
  for (std::size_t i = 0; i < u.dimension(); ++i) ip += std::conj(u[i]) * v[i];
  return std::clamp(std::norm(ip), 0.0, 1.0);
}

inline double chordal_distance(const PureState& u, const PureState& v) {
  return std::sqrt(1.0 - fidelity(u, v));
}

/// Same line, i.e. equal up to global phase.
inline bool same_line(const PureState& u, const PureState& v, double tolerance = 1e-10) {
  return u.dimension() == v.dimension() && 1.0 - fidelity(u, v) <= tolerance;
}

/// Pauli expectations (<X>, <Y>, <Z>) of a qubit state.
inline std::array<double, 3> bloch_coordinates(const PureState& u) {
  if (u.dimension() != 2) throw std::invalid_argument("Bloch coordinates need dimension 2");
  const Complex cross = std::conj(u[0]) * u[1];
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(u[0]) - std::norm(u[1])};
}

class Codebook {
 public:
  explicit Codebook(std::vector<PureState> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("codebook needs at least two points");
    for (const auto& p : points_) {
      if (p.dimension() != points_.front().dimension()) {
        throw std::invalid_argument("codebook points differ in dimension");
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_.front().dimension(); }
  const std::vector<PureState>& points() const { return points_; }
  const PureState& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<PureState> points_;
};

/// Eigenbases of Z, X and Y: |0>, |1>, |+>, |->, |+i>, |-i>.
inline Codebook mub_codebook() {
  const double r = 1.0 / std::numbers::sqrt2;
  const Complex i(0, 1);
  return Codebook({PureState({1, 0}), PureState({0, 1}), PureState({r, r}), PureState({r, -r}),
                   PureState({r, i * r}), PureState({r, -i * r})});
}

inline std::vector<std::vector<double>> fidelity_table(const Codebook& cb) {
  std::vector<std::vector<double>> t(cb.size(), std::vector<double>(cb.size()));
  for (std::size_t a = 0; a < cb.size(); ++a) {
    for (std::size_t b = 0; b < cb.size(); ++b) t[a][b] = fidelity(cb[a], cb[b]);
  }
  return t;
}

inline double min_chordal_distance(const Codebook& cb) {
  double best = 1.0;
  for (std::size_t a = 0; a < cb.size(); ++a) {
    for (std::size_t b = a + 1; b < cb.size(); ++b) best = std::min(best, chordal_distance(cb[a], cb[b]));
  }
  return best;
}

/// Parses `re`, `imj`, `re+imj` or `re-imj`.
inline Complex parse_complex(const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  auto fail = [&] { throw std::invalid_argument("bad complex number '" + text + "'"); };
  const double first = std::strtod(s, &end);
  if (end == s) fail();
  if (*end == '\0') return {first, 0.0};
  if (*end == 'j' && end[1] == '\0') return {0.0, first};
  if (*end != '+' && *end != '-') fail();
  const char* imag_start = end;
  const double second = std::strtod(imag_start, &end);
  if (end == imag_start || *end != 'j' || end[1] != '\0') fail();
  return {first, second};
}

inline std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real() << (std::signbit(c.imag()) ? '-' : '+') << std::abs(c.imag()) << 'j';
  return os.str();
}

/// Reads one point per line of comma-separated complex coordinates. Points
/// off the unit sphere are normalized and a warning is appended.
inline Codebook read_codebook(std::istream& in, std::vector<std::string>* warnings = nullptr) {
  std::vector<PureState> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; }),
               line.end());
    if (line.empty()) continue;
    std::vector<Complex> coords;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        coords.push_back(parse_complex(field));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    double n2 = 0;
    for (const auto& c : coords) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > 1e-10 && warnings) {
      std::ostringstream os;
      os << "line " << lineno << ": point has squared norm " << n2 << ", normalized";
      warnings->push_back(os.str());
    }
    try {
      points.push_back(PureState::normalized(std::move(coords)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return Codebook(std::move(points));
}

inline void write_codebook(std::ostream& out, const Codebook& cb) {
  for (const auto& p : cb.points()) {
    for (std::size_t i = 0; i < p.dimension(); ++i) {
      if (i) out << ',';
      out << format_complex(p[i]);
    }
    out << '\n';
  }
}

/// Duplicate lines among the points, as index pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> duplicate_points(const Codebook& cb,
                                                                          double tolerance = 1e-10) {
  std::vector<std::pair<std::size_t, std::size_t>> dups;
  for (std::size_t a = 0; a < cb.size(); ++a) {
    for (std::size_t b = a + 1; b < cb.size(); ++b) {
      if (same_line(cb[a], cb[b], tolerance)) dups.emplace_back(a, b);
    }
  }
  return dups;
}

}  // namespace qgas
