#include "d5/asymptotic.hpp"
#include "d5/report.hpp"
#include "d5/verification.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace d5;

TEST(Polyfit, RecoversPolynomial) {
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    const double t = 2 + 0.3 * i;
    x.push_back(t);
    y.push_back(1 - 2 * t + 0.5 * std::pow(t, 3) + 1e-3 * std::pow(t, 6));
  }
  const auto f = polyfit(x, y, 6);
  EXPECT_NEAR(f.leading(), 1e-3, 1e-9);
  EXPECT_NEAR(f.coeffs[3], 0.5, 1e-5);
  EXPECT_NEAR(f.coeffs[0], 1, 1e-4);
  EXPECT_THROW(polyfit({1, 2, 3}, {1, 2, 3}, 6), std::invalid_argument);
}

TEST(Asymptotic, SmallHeightsMatchBruteForce) {
  const auto t = asymptotic_table({10, 100}, 2e-7);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].N, count_brute(10));
  EXPECT_EQ(t.rows[1].N, count_brute(100));
  const double L = std::log(100.0);
  EXPECT_DOUBLE_EQ(t.rows[1].per_log6, 3290 / (100 * std::pow(L, 6)));
  EXPECT_DOUBLE_EQ(t.rows[1].ratio, t.rows[1].per_log6 / 2e-7);
  ASSERT_TRUE(t.fit);
  EXPECT_EQ(t.fit->coeffs.size(), 7u);
}

TEST(Asymptotic, SingleHeightHasNoFit) {
  const auto t = asymptotic_table({500}, 1);
  EXPECT_EQ(t.rows.size(), 1u);
  EXPECT_FALSE(t.fit);
}

TEST(Asymptotic, Errors) {
  EXPECT_THROW(asymptotic_table({}, 1), std::invalid_argument);
  EXPECT_THROW(asymptotic_table({100, 10}, 1), std::invalid_argument);
  EXPECT_THROW(asymptotic_table({1}, 1), std::invalid_argument);
  EXPECT_THROW(asymptotic_table({10, kTorsorWidthCeiling + 1}, 1), BudgetExceeded);
}

TEST(Asymptotic, RatioDecreasesOverSmallHeights) {
  const auto t = asymptotic_table({1000, 10000, 100000}, c_sh_with(10000, 35.6287854).value);
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_LT(t.rows[i].ratio, t.rows[i - 1].ratio);
}

TEST(Report, Schema) {
  auto r = assertable("x", Json{{"q", 3}}, 1.5, 2, 0.75);
  EXPECT_TRUE(r.pass);
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"check", "params", "value", "bound", "ratio", "pass", "wall_time", "report_only"}));
  EXPECT_TRUE(j["wall_time"].is_null());
  EXPECT_FALSE(assertable("x", {}, 3, 2, 1.5).pass);
  auto ro = report_only("y", {}, 3, 2, 1.5, false);
  EXPECT_TRUE(ro.pass);
  EXPECT_TRUE(to_json(ro)["report_only"].get<bool>());
  EXPECT_FALSE(ro.params["within_band"].get<bool>());
  EXPECT_TRUE(to_json(assertable("z", {}, NAN, 1, INFINITY))["value"].is_null());
}

TEST(Checks, ExactChecksPass) {
  EXPECT_TRUE(check_base_case().pass);
  EXPECT_TRUE(check_alpha().pass);
  EXPECT_TRUE(check_bijection(60).pass);
  EXPECT_TRUE(check_torsor_identity(2000, 7).pass);
  EXPECT_TRUE(check_sigma_p(2, 3).pass);
  EXPECT_TRUE(check_euler_tail(1000, 100000).pass);
}

TEST(Checks, EtaOnlyCoprimeResiduesAsserted) {
  const auto rs = check_eta(200);
  EXPECT_TRUE(rs[0].pass);
  EXPECT_DOUBLE_EQ(rs[0].value, 1.0);  // eta(1; 8) = 4 = 2^{omega(8)+1}
  // eta(0; 25) = 5 exceeds 4: the bound needs alpha coprime to q.
  EXPECT_GT(rs[1].value, 1);
  EXPECT_TRUE(rs[1].report_only);
}
