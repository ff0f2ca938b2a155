#pragma once

// Empirical growth of N(B) against c B (log B)^6.

#include "d5/torsor.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace d5 {

struct AsymptoticRow {
  i64 B = 0;
  std::size_t N = 0;
  double per_log6 = 0;  // N / (B log^6 B)
  double ratio = 0;     // N / (c B log^6 B)
};

struct PolynomialFit {
  std::vector<double> coeffs;  // N/B ~ sum_j coeffs[j] (log B)^j
  std::size_t points = 0;
  double leading() const { return coeffs.back(); }
};

struct AsymptoticTable {
  double c = 0;
  std::vector<AsymptoticRow> rows;
  std::optional<PolynomialFit> fit;
};

inline constexpr int kFitDegree = 6;
inline constexpr int kFitPoints = 64;

/// Least squares of y against a degree-`degree` polynomial in x. The
/// abscissae are scaled to [0, 1] before solving and the coefficients
/// rescaled afterwards.
inline PolynomialFit polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  if (x.size() != y.size() || x.size() <= static_cast<std::size_t>(degree))
    throw std::invalid_argument("polyfit: need more points than the degree");
  double s = 0;
  for (double v : x) s = std::max(s, std::abs(v));
  if (s == 0) s = 1;
  Eigen::MatrixXd V(static_cast<Eigen::Index>(x.size()), degree + 1);
  Eigen::VectorXd Y(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1;
    for (int j = 0; j <= degree; ++j, p *= x[i] / s) V(static_cast<Eigen::Index>(i), j) = p;
    Y(static_cast<Eigen::Index>(i)) = y[i];
  }
  const Eigen::VectorXd a = V.colPivHouseholderQr().solve(Y);
  PolynomialFit f;
  f.points = x.size();
  double p = 1;
  for (int j = 0; j <= degree; ++j, p *= s) f.coeffs.push_back(a(j) / p);
  return f;
}

/// Rows for each height from a single torsor enumeration at the largest one.
/// With two or more heights, N(B)/B is fitted on kFitPoints log-spaced B
/// between the smallest and largest height.
inline AsymptoticTable asymptotic_table(const std::vector<i64>& heights, double c, unsigned workers = 1) {
  if (heights.empty()) throw std::invalid_argument("asymptotic_table: no heights");
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (heights[i] < 2) throw std::invalid_argument("asymptotic_table: heights must be at least 2");
    if (i > 0 && heights[i] <= heights[i - 1]) throw std::invalid_argument("asymptotic_table: heights must ascend");
  }
  if (heights.back() > kTorsorWidthCeiling) throw BudgetExceeded("asymptotic_table: height above the torsor budget");
  const auto hist = torsor_height_histogram(heights.back(), workers);
  std::vector<std::size_t> cum(hist.size());
  std::size_t run = 0;
  for (std::size_t b = 0; b < hist.size(); ++b) cum[b] = run += hist[b];

  AsymptoticTable t;
  t.c = c;
  for (i64 B : heights) {
    const double L = std::log(static_cast<double>(B)), scale = static_cast<double>(B) * std::pow(L, 6);
    const std::size_t N = cum[static_cast<std::size_t>(B)];
    t.rows.push_back({B, N, static_cast<double>(N) / scale, static_cast<double>(N) / (c * scale)});
  }
  if (heights.size() >= 2) {
    const double l0 = std::log(static_cast<double>(heights.front())), l1 = std::log(static_cast<double>(heights.back()));
    std::vector<double> xs, ys;
    for (int i = 0; i < kFitPoints; ++i) {
      const i64 B = std::llround(std::exp(l0 + (l1 - l0) * i / (kFitPoints - 1)));
      const i64 Bc = std::clamp<i64>(B, heights.front(), heights.back());
      xs.push_back(std::log(static_cast<double>(Bc)));
      ys.push_back(static_cast<double>(cum[static_cast<std::size_t>(Bc)]) / static_cast<double>(Bc));
    }
    t.fit = polyfit(xs, ys, kFitDegree);
  }
  return t;
}

}  // namespace d5
