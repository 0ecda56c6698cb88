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

#include "oracles.hpp"
#include "qgas/polynomial.hpp"
#include "qgas/statevector.hpp"

namespace qgas {
namespace {

// f = -2 x0 - x1 + 3 x0 x1
BinaryPolynomial small_f() {
  BinaryPolynomial f(2);
  f.add_term(-2, {0}).add_term(-1, {1}).add_term(3, {0, 1});
  return f;
}

// Amplitude of |x>|y> after the preparation, against the definition
// 2^{-n/2} [y == code(f(x))].
void expect_exact_readout(const BinaryPolynomial& f, const CostEncoding& enc) {
  StateVector s(f.num_vars() + enc.m);
  apply_circuit(s, compile_state_prep(f, enc));
  const double amp = 1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(f.num_vars())));
  for (BasisIndex x = 0; x < (BasisIndex{1} << f.num_vars()); ++x) {
    const auto code = to_twos_complement(static_cast<std::int64_t>(oracle::evaluate(f, x)), enc.m);
    for (BasisIndex y = 0; y < (BasisIndex{1} << enc.m); ++y) {
      const double want = y == code ? amp : 0.0;
      ASSERT_NEAR(std::abs(s[x | (y << f.num_vars())] - want), 0.0, 1e-9) << "x=" << x << " y=" << y;
    }
  }
}

TEST(Evaluate, SmallExamples) {
  const auto f = small_f();
  EXPECT_EQ(f.evaluate(Assignment{0, 0}), 0);
  EXPECT_EQ(f.evaluate(Assignment{1, 0}), -2);
  EXPECT_EQ(f.evaluate(Assignment{0, 1}), -1);
  EXPECT_EQ(f.evaluate(Assignment{1, 1}), 0);
  EXPECT_THROW(f.evaluate(Assignment{1}), std::invalid_argument);
}

TEST(Evaluate, CostTableMatchesTermSummation) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_polynomial(7, 4, 15, rng, t % 2 == 1);
    const auto table = cost_table(p);
    for (BasisIndex x = 0; x < table.size(); ++x) {
      EXPECT_NEAR(table[x], oracle::evaluate(p, x), 1e-12);
      EXPECT_NEAR(p.evaluate_index(x), oracle::evaluate(p, x), 1e-12);
    }
  }
}

TEST(BinaryPolynomial, MergesAndDropsTerms) {
  BinaryPolynomial p(3);
  p.add_term(2, {1, 0}).add_term(-2, {0, 1}).add_term(1, {2});
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.degree(), 1u);
  EXPECT_THROW(p.add_term(1, {1, 1}), std::invalid_argument);
  EXPECT_THROW(p.add_term(1, {3}), std::out_of_range);
  EXPECT_TRUE(p.is_integral());
  p.add_term(0.5, {});
  EXPECT_FALSE(p.is_integral());
}

TEST(Shift, Examples) {
  const auto f = small_f();
  const auto g = shift(f, 2);
  const std::vector<double> want{2, 0, 1, 2};
  for (BasisIndex x = 0; x < 4; ++x) EXPECT_EQ(g.evaluate_index(x), want[x]);
  EXPECT_EQ(shift(f, 0), f);
  const auto h = shift(f, -3);
  for (BasisIndex x = 0; x < 4; ++x) EXPECT_NEAR(h.evaluate_index(x), f.evaluate_index(x) - 3, 1e-12);
}

TEST(Bounds, SoundAndExact) {
  const auto f = small_f();
  EXPECT_EQ(cost_bounds(f), (Bounds{-3, 3}));
  EXPECT_EQ(exact_cost_bounds(f), (Bounds{-2, 0}));
  EXPECT_EQ(cost_bounds(BinaryPolynomial(3, 4.5)), (Bounds{4.5, 4.5}));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_polynomial(6, 3, 10, rng, true);
    const Bounds b = cost_bounds(p);
    for (BasisIndex x = 0; x < 64; ++x) {
      EXPECT_LE(b.lower, oracle::evaluate(p, x) + 1e-12);
      EXPECT_GE(b.upper, oracle::evaluate(p, x) - 1e-12);
    }
  }
}

TEST(RegisterWidth, Examples) {
  EXPECT_EQ(register_width_for(-2, 0), 2u);
  EXPECT_EQ(register_width_for(-3, 3), 3u);
  EXPECT_EQ(register_width_for(-4, 3), 3u);
  EXPECT_EQ(register_width_for(-4, 4), 4u);
  EXPECT_EQ(choose_register_width(small_f()).m, 3u);
  EXPECT_EQ(choose_register_width(small_f()).scale, 1.0);
  BinaryPolynomial r(1);
  r.add_term(0.5, {0});
  const auto enc = choose_register_width(r, 6);
  EXPECT_EQ(enc.m, 6u);
  EXPECT_DOUBLE_EQ(enc.scale, 31 / 0.5);
}

TEST(TwosComplement, RoundTrip) {
  for (unsigned m = 2; m <= 6; ++m) {
    const std::int64_t half = std::int64_t{1} << (m - 1);
    for (std::int64_t v = -half; v < half; ++v) {
      const auto code = to_twos_complement(v, m);
      EXPECT_EQ(from_twos_complement(code, m), v);
      EXPECT_EQ((code >> (m - 1)) & 1U, v < 0 ? 1U : 0U);
    }
  }
}

TEST(CompileStatePrep, SingleVariable) {
  BinaryPolynomial f(1);
  f.add_term(1, {0});
  StateVector s(3);
  apply_circuit(s, compile_state_prep(f, {2, 1.0}));
  // x0 = 1 branch: conditional probability of cost register 01 is one.
  EXPECT_NEAR(probability_of(s, "011") / 0.5, 1.0, 1e-12);
}

TEST(CompileStatePrep, NegativeConstant) {
  const BinaryPolynomial f(1, -1.0);
  StateVector s(3);
  apply_circuit(s, compile_state_prep(f, {2, 1.0}));
  EXPECT_NEAR(probability_of(s, "110"), 0.5, 1e-12);
  EXPECT_NEAR(probability_of(s, "111"), 0.5, 1e-12);
}

TEST(CompileStatePrep, SmallFunctionAllBranches) { expect_exact_readout(small_f(), {3, 1.0}); }

TEST(CompileStatePrep, FourVariablesThreeCostQubits) {
  BinaryPolynomial f(4);
  f.add_term(2, {0}).add_term(-3, {1, 2}).add_term(1, {3}).add_term(-1, {0, 3});
  const Bounds b = exact_cost_bounds(f);
  ASSERT_GE(b.lower, -4);
  ASSERT_LE(b.upper, 3);
  expect_exact_readout(f, {3, 1.0});
}

TEST(CompileStatePrep, RandomIntegerCorpusUpToFourByFive) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const unsigned n = 1 + t % 4;
    const auto p = oracle::random_polynomial(n, n, 6, rng, false, 3);
    CostEncoding enc = choose_register_width(p);
    if (enc.m > 5) continue;
    expect_exact_readout(p, enc);
    enc.m = 5;
    expect_exact_readout(p, enc);
  }
}

TEST(CompileStatePrep, OverflowThrows) {
  BinaryPolynomial f(1);
  f.add_term(4, {0});
  EXPECT_THROW(compile_state_prep(f, {3, 1.0}), RegisterOverflow);
}

TEST(CompileStatePrep, GateLayoutFollowsTheConstruction) {
  const auto c = compile_state_prep(small_f(), {3, 1.0});
  // 2 + 3 Hadamards, three terms times three cost qubits minus zero angles,
  // and one IQFT.
  std::size_t h = 0, phases = 0, iqft = 0;
  for (const auto& g : c.gates()) {
    h += g.kind == GateKind::kH;
    phases += g.kind == GateKind::kPhase;
    iqft += g.kind == GateKind::kIqft;
  }
  EXPECT_EQ(h, 5u);
  EXPECT_EQ(iqft, 1u);
  EXPECT_LE(phases, 9u);
  EXPECT_EQ(c.gates().back(), Gate::iqft(2, 3));
}

TEST(CompileStatePrep, RealCoefficientLeakageWithinOneUnit) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const auto p = oracle::random_polynomial(3, 2, 4, rng, true, 2);
    const CostEncoding enc = choose_register_width(p, 5);
    StateVector s(p.num_vars() + enc.m);
    apply_circuit(s, compile_state_prep(p, enc));
    for (BasisIndex x = 0; x < 8; ++x) {
      BasisIndex best = 0;
      for (BasisIndex y = 1; y < 32; ++y) {
        if (std::norm(s[x | (y << 3)]) > std::norm(s[x | (best << 3)])) best = y;
      }
      const double scaled = enc.scale * oracle::evaluate(p, x);
      const auto got = from_twos_complement(best, enc.m);
      EXPECT_LE(std::abs(static_cast<double>(got) - std::round(scaled)), 1.0) << "t=" << t << " x=" << x;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 800);
}

TEST(Gray, Examples) {
  const std::vector<std::string> want{"00", "10", "11", "01"};  // bit 0 first
  for (unsigned v = 0; v < 4; ++v) EXPECT_EQ(assignment_string(gray_encode(v, 2)), want[v]);
  for (unsigned v = 0; v + 1 < 1024; ++v) {
    const auto a = gray_encode(v, 10);
    const auto b = gray_encode(v + 1, 10);
    int diff = 0;
    for (int i = 0; i < 10; ++i) diff += a[i] != b[i];
    EXPECT_EQ(diff, 1);
  }
  for (unsigned v = 0; v < 1024; ++v) EXPECT_EQ(gray_decode(gray_encode(v, 10)), v);
  EXPECT_THROW(gray_encode(4, 2), std::out_of_range);
}

TEST(PowerMean, Examples) {
  EXPECT_NEAR(power_mean_min(std::vector<double>{3, 3, 3}, -5), 3.0, 1e-12);
  EXPECT_NEAR(power_mean_min(std::vector<double>{1, 2}, -10), std::pow((1 + std::pow(2.0, -10)) / 2, -0.1), 1e-12);
  EXPECT_NEAR(power_mean_min(std::vector<double>{1, 2}, -10), 1.0716, 1e-3);
  const std::vector<double> v{1, 2, 5};
  double prev = 1e9;
  for (double p : {-1.0, -2.0, -4.0, -8.0, -16.0}) {
    const double gap = power_mean_min(v, p) - 1.0;
    EXPECT_LT(gap, prev);
    EXPECT_GE(gap, 0);
    prev = gap;
  }
  EXPECT_THROW(power_mean_min(v, 1.0), std::invalid_argument);
  EXPECT_THROW(power_mean_min(std::vector<double>{1, 0}, -1), std::domain_error);
}

TEST(ParsePolynomial, ReadsTheTextFormat) {
  std::istringstream in("# f\n-2 * x_0\n-1 * x_1\n3 * x_0 * x_1\n  \n0.5\n");
  const auto p = parse_polynomial(in);
  EXPECT_EQ(p.num_vars(), 2u);
  EXPECT_EQ(p.constant(), 0.5);
  EXPECT_EQ(p.evaluate(Assignment{1, 0}), -1.5);
}

TEST(ParsePolynomial, ErrorsNameTheLine) {
  for (const auto& [text, line] : std::vector<std::pair<std::string, std::size_t>>{
           {"1 * x_0\n2 * y_1\n", 2}, {"1 * x_0 * x_0\n", 1}, {"\n\nabc\n", 3}, {"1 * \n", 1}, {"2x * x_1\n", 1}}) {
    std::istringstream in(text);
    try {
      parse_polynomial(in);
      ADD_FAILURE() << "no error for: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos);
    }
  }
}

TEST(ParsePolynomial, WriteThenReadRoundTrips) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto p = oracle::random_polynomial(6, 3, 8, rng, true);
    p.add_term(0.25, {});
    std::ostringstream out;
    write_polynomial(out, p);
    std::istringstream in(out.str());
    EXPECT_EQ(parse_polynomial(in, 6), p);
  }
}

}  // namespace
}  // namespace qgas
