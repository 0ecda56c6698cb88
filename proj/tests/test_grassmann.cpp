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

#include <random>
#include <sstream>

#include "qgas/grassmann.hpp"

namespace qgas {
namespace {

constexpr double kR = 0.70710678118654752;

PureState random_state(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(d);
  for (auto& c : v) c = {g(rng), g(rng)};
  return PureState::normalized(std::move(v));
}

TEST(Fidelity, Examples) {
  const PureState zero({1, 0}), one({0, 1}), plus({kR, kR});
  EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(zero, plus), 0.5, 1e-15);
  EXPECT_THROW(fidelity(zero, PureState({1, 0, 0})), std::invalid_argument);
}

TEST(ChordalDistance, Examples) {
  const PureState zero({1, 0}), one({0, 1}), plus({kR, kR});
  EXPECT_NEAR(chordal_distance(zero, zero), 0.0, 1e-12);
  EXPECT_NEAR(chordal_distance(zero, one), 1.0, 1e-12);
  EXPECT_NEAR(chordal_distance(zero, plus), 0.70711, 1e-5);
  EXPECT_EQ(chordal_distance(zero, plus), chordal_distance(plus, zero));
}

TEST(ChordalDistance, SquarePlusFidelityIsOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const auto u = random_state(rng, 2 + i % 3);
    const auto v = random_state(rng, 2 + i % 3);
    const double d = chordal_distance(u, v);
    EXPECT_NEAR(d * d + fidelity(u, v), 1.0, 1e-12);
  }
}

TEST(PureState, GlobalPhaseInvariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_state(rng, 2);
    const auto v = random_state(rng, 2);
    std::vector<Complex> rotated = u.coords();
    const Complex w = std::polar(1.0, ang(rng));
    for (auto& c : rotated) c *= w;
    const PureState ru(rotated);
    EXPECT_NEAR(fidelity(ru, v), fidelity(u, v), 1e-12);
    const auto a = bloch_coordinates(u);
    const auto b = bloch_coordinates(ru);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
    EXPECT_TRUE(same_line(u, ru));
    EXPECT_NEAR(std::abs(ru[0] - u[0]), 0, 1e-12);  // canonical storage
  }
}

TEST(PureState, RejectsBadInput) {
  EXPECT_THROW(PureState({1, 1}), std::domain_error);
  EXPECT_THROW(PureState({1}), std::invalid_argument);
  EXPECT_THROW(PureState::normalized({0, 0}), std::domain_error);
}

TEST(Bloch, Poles) {
  const auto z0 = bloch_coordinates(PureState({1, 0}));
  const auto z1 = bloch_coordinates(PureState({0, 1}));
  const auto xp = bloch_coordinates(PureState({kR, kR}));
  EXPECT_NEAR(z0[2], 1, 1e-15);
  EXPECT_NEAR(z1[2], -1, 1e-15);
  EXPECT_NEAR(xp[0], 1, 1e-15);
  EXPECT_NEAR(xp[1], 0, 1e-15);
  EXPECT_NEAR(xp[2], 0, 1e-15);
  EXPECT_THROW(bloch_coordinates(PureState({1, 0, 0})), std::invalid_argument);
}

TEST(Bloch, AlwaysUnitLength) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto b = bloch_coordinates(random_state(rng, 2));
    EXPECT_NEAR(b[0] * b[0] + b[1] * b[1] + b[2] * b[2], 1.0, 1e-10);
  }
}

TEST(Mub, FidelityStructure) {
  const auto cb = mub_codebook();
  ASSERT_EQ(cb.size(), 6u);
  const auto t = fidelity_table(cb);
  int cross = 0;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      if (a / 2 == b / 2) {
        EXPECT_NEAR(t[a][b], 0.0, 1e-12);
      } else {
        EXPECT_NEAR(t[a][b], 0.5, 1e-12);
        ++cross;
      }
    }
  }
  EXPECT_EQ(cross, 12);
  EXPECT_NEAR(min_chordal_distance(cb), std::sqrt(0.5), 1e-12);
}

TEST(Mub, LocallyOptimalUnderPerturbation) {
  const auto cb = mub_codebook();
  const double base = min_chordal_distance(cb);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int t = 0; t < 1000; ++t) {
    std::vector<PureState> pts;
    for (const auto& p : cb.points()) {
      std::vector<Complex> v = p.coords();
      std::vector<Complex> delta(2);
      double n2 = 0;
      for (auto& d : delta) {
        d = {g(rng), g(rng)};
        n2 += std::norm(d);
      }
      for (std::size_t i = 0; i < 2; ++i) v[i] += 0.05 * delta[i] / std::sqrt(n2);
      pts.push_back(PureState::normalized(v));
    }
    EXPECT_LE(min_chordal_distance(Codebook(pts)), base + 1e-12);
  }
}

TEST(Codebook, OrthonormalAndDuplicate) {
  EXPECT_NEAR(min_chordal_distance(Codebook({PureState({1, 0}), PureState({0, 1})})), 1.0, 1e-15);
  const Codebook dup({PureState({1, 0}), PureState({kR, kR}), PureState({kR, kR})});
  EXPECT_NEAR(min_chordal_distance(dup), 0.0, 1e-7);
  EXPECT_EQ(duplicate_points(dup).size(), 1u);
  EXPECT_THROW(Codebook({PureState({1, 0})}), std::invalid_argument);
  EXPECT_THROW(Codebook({PureState({1, 0}), PureState({1, 0, 0})}), std::invalid_argument);
}

TEST(CodebookFile, ParseWriteRoundTrip) {
  EXPECT_EQ(parse_complex("1"), Complex(1, 0));
  EXPECT_EQ(parse_complex("-0.5j"), Complex(0, -0.5));
  EXPECT_EQ(parse_complex("0.5-0.25j"), Complex(0.5, -0.25));
  EXPECT_EQ(parse_complex("1e-3+2e1j"), Complex(1e-3, 20));
  EXPECT_THROW(parse_complex("1+2"), std::invalid_argument);
  EXPECT_THROW(parse_complex("abc"), std::invalid_argument);

  std::ostringstream out;
  write_codebook(out, mub_codebook());
  std::istringstream in(out.str());
  std::vector<std::string> warnings;
  const auto back = read_codebook(in, &warnings);
  EXPECT_TRUE(warnings.empty());
  ASSERT_EQ(back.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(same_line(back[i], mub_codebook()[i], 1e-15));
}

TEST(CodebookFile, NormalizesWithWarning) {
  std::istringstream in("# two points\n2, 0\n1, 1j\n");
  std::vector<std::string> warnings;
  const auto cb = read_codebook(in, &warnings);
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_NEAR(fidelity(cb[0], cb[1]), 0.5, 1e-12);
  std::istringstream bad("1, x\n");
  EXPECT_THROW(read_codebook(bad), std::invalid_argument);
}

}  // namespace
}  // namespace qgas
