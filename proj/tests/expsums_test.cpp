#include "d5/expsums.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace d5;

namespace {

// Straight from the definition, with no reduction of the argument.
Complex s_q_naive(u64 q, i64 a, i64 b) {
  Complex s = 0;
  for (i64 v = 1; v <= static_cast<i64>(q); ++v) {
    const double th = 2 * std::numbers::pi * static_cast<double>(a * v * v + b * v) / static_cast<double>(q);
    s += Complex(std::cos(th), std::sin(th));
  }
  return s;
}

}  // namespace

TEST(Sq, Examples) {
  EXPECT_NEAR(std::abs(s_q(7, 0, 0) - Complex(7, 0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(s_q(5, 0, 1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(s_q(4, 1, 0) - Complex(2, 2)), 0, 1e-12);
  EXPECT_NEAR(std::abs(s_q(4, -3, 8) - Complex(2, 2)), 0, 1e-12);
}

TEST(Sq, MatchesNaive) {
  for (u64 q = 1; q <= 40; ++q)
    for (i64 a = -3; a <= 5; ++a)
      for (i64 b = -2; b <= 4; ++b) ASSERT_NEAR(std::abs(s_q(q, a, b) - s_q_naive(q, a, b)), 0, 1e-9);
}

TEST(Sq, SelfConvolutionIdentity) {
  for (u64 q = 1; q <= 50; ++q)
    for (i64 a = 0; a < static_cast<i64>(q); ++a)
      for (i64 b = 0; b < static_cast<i64>(q); ++b) {
        const double lhs = std::norm(s_q(q, a, b));
        ASSERT_NEAR(lhs, s_q_abs2_convolution(q, a, b), 1e-8 * (1 + lhs)) << q << ' ' << a << ' ' << b;
      }
}

TEST(Sq, BoundRatio) {
  const auto r = s_q_bound_ratio(100);
  EXPECT_LE(r.ratio, 1.41422);
  EXPECT_NEAR(r.ratio, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(s_q(4, 1, 0)) / 2.0, std::sqrt(2.0), 1e-14);
  EXPECT_EQ(s_q_bound_ratio(60, 3).ratio, s_q_bound_ratio(60, 1).ratio);
}

TEST(Sq, LinearSumsVanish) {
  for (u64 q = 2; q <= 60; ++q)
    for (i64 b = 1; b < static_cast<i64>(q); ++b)
      if (gcd64s(b, static_cast<i64>(q)) == 1) ASSERT_NEAR(std::abs(s_q(q, 0, b)), 0, 1e-10);
}

TEST(Psi, Convention) {
  EXPECT_DOUBLE_EQ(psi(0), -0.5);
  EXPECT_DOUBLE_EQ(psi(0.75), 0.25);
  EXPECT_DOUBLE_EQ(psi(-0.25), 0.25);
  EXPECT_DOUBLE_EQ(psi(3), -0.5);
  for (double t : {0.1, 0.37, 2.5, -7.8}) EXPECT_NEAR(psi(t) + psi(-t), 0, 1e-12);
  EXPECT_DOUBLE_EQ(psi(2) + psi(-2), -1);
}

TEST(Psi, Hermite) {
  for (u64 q : {1u, 2u, 7u, 12u, 31u})
    for (double t : {0.0, 0.3, 1.7, -2.45, 10.0}) {
      double s = 0;
      for (u64 x = 0; x < q; ++x) s += psi((t - static_cast<double>(x)) / static_cast<double>(q));
      EXPECT_NEAR(s, psi(t), 1e-9) << q << ' ' << t;
    }
}

TEST(PsiSum, Examples) {
  EXPECT_DOUBLE_EQ(psi_sum_coprime(1, 1, 0.3), psi(0.3));
  EXPECT_DOUBLE_EQ(psi_sum_all(1, 5, 0.3), psi(0.3));
  EXPECT_DOUBLE_EQ(psi_sum_coprime(2, 1, 0), 0.0);
  EXPECT_THROW(psi_sum_coprime(4, 2, 0), std::invalid_argument);
  // All residues vs coprime plus the non-coprime residues.
  double extra = 0;
  for (u64 x : {0u, 2u, 3u, 4u, 6u, 8u, 9u, 10u}) extra += psi((1.3 - 5.0 * static_cast<double>(x * x % 12)) / 12);
  EXPECT_NEAR(psi_sum_all(12, 5, 1.3), psi_sum_coprime(12, 5, 1.3) + extra, 1e-9);
}

TEST(PsiSum, Deterministic) {
  const auto a = psi_ratio_scan(100, 200, 4, 11, 1), b = psi_ratio_scan(100, 200, 4, 11, 3);
  EXPECT_EQ(a.coprime, b.coprime);
  EXPECT_EQ(a.all, b.all);
}

TEST(Eta, Examples) {
  EXPECT_EQ(eta_count(1, 8), 4u);
  EXPECT_EQ(eta_count(0, 1), 1u);
  EXPECT_EQ(eta_count(2, 4), 0u);
  EXPECT_EQ(eta_counts(8)[1], 4u);
}

TEST(Eta, BoundUpTo1000) {
  for (u64 q = 1; q <= 1000; ++q) {
    const auto c = eta_counts(q);
    const u64 bound = u64{1} << (omega_distinct(factor(q)) + 1);
    for (u64 r = 0; r < q; ++r) {
      if (gcd64(r, q) != 1) continue;
      ASSERT_LE(c[r], bound) << r << " mod " << q;
    }
  }
}

TEST(Congruence, QOne) {
  const auto c = congruence_main_term_check(1, 1, 1, 1, 0, 10000);
  double direct = 0;
  for (u64 n = 1; n <= 10000; ++n) direct += phi_star_double(factor(n));
  EXPECT_NEAR(c.lhs, direct, 1e-6);
  EXPECT_NEAR(c.main, 10000 * 6 / (std::numbers::pi * std::numbers::pi), 1e-9);
  EXPECT_LT(std::abs(c.lhs - c.main), congruence_error_scale(1, 1, 10000));
}

TEST(Congruence, EmptyRange) {
  const auto c = congruence_main_term_check(3, 2, 7, 3, 50, 50);
  EXPECT_EQ(c.lhs, 0);
  EXPECT_EQ(c.main, 0);
}

TEST(Congruence, EvenBKillsEvenN) {
  const u64 a = 3, b = 2, q = 5;
  const auto c = congruence_main_term_check(a, b, q, 2, 0, 2000);
  double direct = 0;
  for (u64 rho = 1; rho <= q; ++rho) {
    if (gcd64(rho, q) != 1) continue;
    for (u64 n = 1; n <= 2000; ++n) {
      if (n % q != 2 * rho * rho % q) continue;
      if (n % 2 == 0) continue;
      direct += to_double(phi_star(factor(n)) / phi_star(factor(gcd64(n, a))));
    }
  }
  EXPECT_NEAR(c.lhs, direct, 1e-8);
  EXPECT_LT(std::abs(c.lhs - c.main), congruence_error_scale(b, q, 2000));
}

TEST(SI, Examples) {
  SIQuery s{0.2, 0.8, 7, 1, 1, [](double x) { return x; }, 2};
  EXPECT_EQ(s_I(s), 0);
  SIQuery one{1, 20, 1, 3, 5, [](double x) { return 10.0 / x; }, 11};
  double direct = 0;
  for (int x = 1; x <= 20; ++x) direct += psi(10.0 / x - 5.0);
  EXPECT_NEAR(s_I(one), direct, 1e-12);
  EXPECT_TRUE(si_contract_ok(one));
  EXPECT_FALSE(si_contract_ok(SIQuery{-1, 1, 3, 1, 1, [](double x) { return x * x * x - x; }, 10}));
  EXPECT_GT(s_I_bound_shape(one), 0);
}

TEST(SI, MatchesDirectDoubleLoop) {
  const u64 q = 15;
  SIQuery s{10, 60, q, 2, 7, [](double x) { return 300.0 / x; }, 40};
  double direct = 0;
  for (int x = 10; x <= 60; ++x)
    for (u64 y = 1; y <= q; ++y)
      if (gcd64(y, q) == 1 && (y * y) % q == static_cast<u64>(2 * x) % q)
        direct += psi((300.0 / x - 7.0 * static_cast<double>(y)) / static_cast<double>(q));
  EXPECT_NEAR(s_I(s), direct, 1e-9);
}
