#pragma once

// Factors of the leading constant: alpha (polytope volume), the Euler
// product of the local densities, and the real density omega_infinity.

#include "d5/arith.hpp"
#include "d5/integer.hpp"
#include "d5/parallel.hpp"
#include "d5/polytope.hpp"
#include "d5/rational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace d5 {

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Local factors and their product
// ---------------------------------------------------------------------------

inline void require_prime(u64 p) {
  if (!default_sieve().is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}

/// (1 - 1/p)^7 (1 + 7/p + 1/p^2).
inline Rational omega_p_exact(u64 p) {
  require_prime(p);
  const BigInt P = p;
  const Rational a(P - 1, P);
  return a * a * a * a * a * a * a * Rational(P * P + 7 * P + 1, P * P);
}

inline long double log_omega_p(u64 p) {
  const long double x = 1.0L / static_cast<long double>(p);
  return 7 * std::log1p(-x) + std::log1p(7 * x + x * x);
}

/// Exact Taylor coefficients c_0..c_n of log((1-x)^7 (1+7x+x^2)) at x = 0.
inline std::vector<Rational> log_omega_series(std::size_t n) {
  // log(1+7x+x^2) = log(1+r1 x) + log(1+r2 x) is irrational in r; instead
  // use L' = F'/F and solve F L' = F' term by term.
  std::vector<Rational> F{1, 7, 1}, dF{7, 2};
  std::vector<Rational> d(n, 0);  // coefficients of L' from log(1+7x+x^2)
  for (std::size_t k = 0; k < n; ++k) {
    Rational s = k < dF.size() ? dF[k] : Rational(0);
    for (std::size_t j = 1; j <= std::min<std::size_t>(k, 2); ++j) s -= F[j] * d[k - j];
    d[k] = s;
  }
  std::vector<Rational> c(n + 1, 0);
  for (std::size_t k = 1; k <= n; ++k) c[k] = d[k - 1] / Rational(k) - Rational(7, k);  // 7 log(1-x) = -7 sum x^k/k
  return c;
}

/// Tail constant: |log omega_p| <= kEulerTailC / p^2 for every prime p >= 11.
inline constexpr double kEulerTailC = 30;
inline constexpr u64 kEulerTailFrom = 11;

/// sup over x in (0, 1/11] of |log omega(x)| / x^2 on a fine grid; the
/// function is smooth there, so this confirms the constant kEulerTailC.
inline double log_omega_tail_sup(int grid = 200000) {
  double sup = 0;
  for (int i = 1; i <= grid; ++i) {
    const long double x = static_cast<long double>(i) / grid / kEulerTailFrom;
    const long double v = 7 * std::log1p(-x) + std::log1p(7 * x + x * x);
    sup = std::max(sup, static_cast<double>(std::fabs(v) / (x * x)));
  }
  return sup;
}

struct EulerProduct {
  u64 cutoff = 0;
  double value = 0;       // prod_{p <= P} omega_p
  double tail_bound = 0;  // bound on |prod_p omega_p - value|
};

/// prod over p <= P of omega_p. Since 0 < omega_p < 1 and
/// |log omega_p| <= C/p^2 for p >= 11, the full product lies in
/// [value * prod_{P < p < 11} omega_p * exp(-C S), value] with
/// S = sum_{p > max(P,10)} p^-2 < 1/max(P,10); the reported bound is
/// value * (exp(C S + sum_{P<p<11} |log omega_p|) - 1).
inline EulerProduct euler_product(u64 P) {
  if (P < 2) throw std::invalid_argument("euler_product: cutoff must be at least 2");
  long double lg = 0, comp = 0;
  for (u64 p : primes_up_to(P)) {
    // Kahan summation over ~8e4 terms.
    const long double y = log_omega_p(p) - comp;
    const long double t = lg + y;
    comp = (t - lg) - y;
    lg = t;
  }
  long double slack = 0;
  for (u64 p : primes_up_to(kEulerTailFrom - 1))
    if (p > P) slack += -log_omega_p(p);
  const long double S = 1.0L / static_cast<long double>(std::max<u64>(P, kEulerTailFrom - 1));
  EulerProduct e;
  e.cutoff = P;
  e.value = static_cast<double>(std::exp(lg));
  e.tail_bound = static_cast<double>(std::exp(lg) * std::expm1(kEulerTailC * S + slack));
  return e;
}

// ---------------------------------------------------------------------------
// p-adic densities from the torsor
// ---------------------------------------------------------------------------

// Variable order in residue tuples: eta1..eta8, alpha1, alpha2.
using Residues = std::array<i64, 10>;

namespace detail {

inline i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }

inline i64 torsor_form_mod(const Residues& v, i64 m) {
  const i64 t1 = mulmod(mulmod(v[1], mulmod(v[5], v[5], m), m), v[9], m);
  const i64 e73 = mulmod(mulmod(v[6], v[6], m), v[6], m);
  const i64 t2 = mulmod(mulmod(mulmod(v[3], mulmod(v[4], v[4], m), m), e73, m), v[7], m);
  const i64 t3 = mulmod(v[2], mulmod(v[8], v[8], m), m);
  return (t1 + t2 + t3) % m;
}

// The coprimality conditions read at a single prime: which coordinates may
// be divisible by p simultaneously.
inline bool coprime_at_p(const Residues& v, i64 p) {
  bool z[10];
  for (int i = 0; i < 10; ++i) z[i] = v[static_cast<std::size_t>(i)] % p == 0;
  auto any = [&](std::initializer_list<int> ids) {
    for (int i : ids)
      if (z[i]) return true;
    return false;
  };
  if (z[9] && any({0, 1, 6})) return false;
  if (z[8] && any({0, 3, 4})) return false;
  if (z[7] && any({0, 1, 2, 3, 4, 5})) return false;
  if (z[6] && any({0, 1, 2, 3, 5})) return false;
  static constexpr int allowed[5][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 5}, {3, 4}};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      if (!z[i] || !z[j]) continue;
      bool ok = false;
      for (const auto& a : allowed) ok |= a[0] == i && a[1] == j;
      if (!ok) return false;
    }
  return true;
}

// Some partial derivative of the torsor form is a unit mod p.
inline bool smooth_mod_p(const Residues& v, i64 p) {
  const i64 e1 = v[0], e2 = v[1], e3 = v[2], e4 = v[3], e5 = v[4], e6 = v[5], e7 = v[6], e8 = v[7], a1 = v[8], a2 = v[9];
  (void)e1;
  auto unit = [p](i128 x) { return x % p != 0; };
  const i128 e73 = i128(e7) * e7 * e7 % p;
  return unit(i128(e2) * e6 * e6) ||                         // d/d alpha2
         unit(i128(e4) * e5 * e5 % p * e73) ||               // d/d eta8
         unit(i128(2) * e3 * a1) ||                          // d/d alpha1
         unit(i128(a1) * a1) ||                              // d/d eta3
         unit(i128(e6) * e6 * a2) ||                         // d/d eta2
         unit(i128(2) * e2 * e6 * a2) ||                     // d/d eta6
         unit(i128(e5) * e5 * e73 % p * e8) ||               // d/d eta4
         unit(i128(2) * e4 * e5 % p * e73 * e8) ||           // d/d eta5
         unit(i128(3) * e4 * e5 * e5 % p * e7 * e7 % p * e8);  // d/d eta7
}

inline bool next_tuple(Residues& v, i64 base, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (++v[i] < base) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace detail

/// Residue tuples mod p solving the torsor equation and the coprimality
/// conditions.
inline std::vector<Residues> torsor_solutions_mod_p(u64 prime) {
  require_prime(prime);
  const i64 p = static_cast<i64>(prime);
  std::vector<Residues> out;
  Residues v{};
  do {
    // alpha2 is determined by the rest unless eta2 eta6^2 = 0 (mod p).
    v[9] = 0;
    const i64 rest = detail::torsor_form_mod(v, p);
    const i64 c = detail::mulmod(v[1], detail::mulmod(v[5], v[5], p), p);
    auto take = [&](i64 a2) {
      v[9] = a2;
      if (detail::coprime_at_p(v, p)) out.push_back(v);
    };
    if (c != 0) {
      take(detail::mulmod(mod_pos(-rest, p), mod_inverse(c, p), p));
    } else if (rest == 0) {
      for (i64 a2 = 0; a2 < p; ++a2) take(a2);
    }
    v[9] = 0;
  } while (detail::next_tuple(v, p, 9));
  return out;
}

struct SigmaP {
  u64 p = 0;
  int k = 0;
  BigInt count;  // N_T(p^k)
  Rational sigma;
};

/// Torsor solutions mod p^k subject to the coprimality conditions, counted
/// by lifting: a solution mod p^j whose gradient is a unit mod p has exactly
/// p^{9(k-j)} lifts; other residues (and every residue while j < full_depth)
/// are lifted explicitly, p^10 candidates at a time.
/// sigma_p = N_T(p^k) / ((p^k - p^{k-1})^7 p^{2k}).
inline SigmaP sigma_p_empirical(u64 prime, int k, int full_depth = 0, u64 budget = 2'000'000'000ULL) {
  if (k < 1) throw std::invalid_argument("sigma_p_empirical: depth must be at least 1");
  require_prime(prime);
  const i64 p = static_cast<i64>(prime);
  BigInt pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  if (pk > BigInt(1) << 20) throw BudgetExceeded("sigma_p_empirical: modulus too large");
  const i64 m = static_cast<i64>(pk);
  u64 work = 0;
  BigInt p9 = BigInt(p) * p * p * p * p * p * p * p * p;

  std::function<BigInt(const Residues&, int, i64)> lift = [&](const Residues& v, int j, i64 pj) -> BigInt {
    if (j == k) return 1;
    if (j >= full_depth && detail::smooth_mod_p(v, p)) {
      BigInt r = 1;
      for (int i = j; i < k; ++i) r *= p9;
      return r;
    }
    BigInt total = 0;
    const i64 next = pj * p;
    Residues t{}, w{};
    do {
      work += 1;
      if (work > budget) throw BudgetExceeded("sigma_p_empirical: lifting budget exhausted");
      for (std::size_t i = 0; i < 10; ++i) w[i] = v[i] + pj * t[i];
      if (detail::torsor_form_mod(w, next) == 0) total += lift(w, j + 1, next);
    } while (detail::next_tuple(t, p, 10));
    return total;
  };

  SigmaP s;
  s.p = prime;
  s.k = k;
  for (const auto& v : torsor_solutions_mod_p(prime)) s.count += lift(v, 1, p);
  (void)m;
  BigInt unit = pk - pk / p;
  BigInt denom = unit * unit * unit * unit * unit * unit * unit * pk * pk;
  s.sigma = Rational(s.count, denom);
  return s;
}

struct ConeDensity {
  u64 p = 0;
  int k = 0;
  BigInt count;  // N*(p^k)
  Rational ratio;
};

/// Quadruples mod p^k, not all divisible by p, on the cubic, divided by
/// (p^k - p^{k-1}) p^{2k}. The singular point keeps this from stabilizing;
/// kept as a diagnostic next to sigma_p_empirical.
inline ConeDensity cone_density(u64 prime, int k) {
  if (k < 1) throw std::invalid_argument("cone_density: depth must be at least 1");
  require_prime(prime);
  const i64 p = static_cast<i64>(prime);
  i64 m = 1;
  for (int i = 0; i < k; ++i) m *= p;
  if (m > 400) throw BudgetExceeded("cone_density: modulus too large");
  BigInt n = 0;
  for (i64 x0 = 0; x0 < m; ++x0) {
    const i64 a = x0 * x0 % m;
    const i64 g = std::gcd(a, m);
    for (i64 x1 = 0; x1 < m; ++x1)
      for (i64 x2 = 0; x2 < m; ++x2) {
        const i64 rhs = mod_pos(-(x0 * x2 % m * x2 + x2 * (x1 * x1 % m)), m);
        if (x0 % p == 0 && x1 % p == 0 && x2 % p == 0) {
          for (i64 x3 = 0; x3 < m; ++x3)
            if (x3 % p != 0 && (a * x3 - rhs) % m == 0) n += 1;
          continue;
        }
        // a x3 = rhs (mod m) has g solutions when g | rhs.
        if (rhs % g == 0) n += g;
      }
  }
  ConeDensity c;
  c.p = prime;
  c.k = k;
  c.count = n;
  c.ratio = Rational(n, BigInt(m - m / p) * m * m);
  return c;
}

// ---------------------------------------------------------------------------
// Real density
// ---------------------------------------------------------------------------

// omega_infinity is the integral of x0^-2 over |x0|, |x1|, x2 <= 1, x2 >= 0,
// |x0 x2^2 + x2 x1^2| <= x0^2. For fixed (x0, x2) the admissible x1^2 form an
// interval [lo, hi]; L below is the length of the x1-set. With x0 = +-u^4 the
// outer integrand 4 u^-5 (int L dx2) is bounded as u -> 0.
namespace detail {

inline double x1_length(double x0, double x2) {
  const double lo = (-x0 * x0 - x0 * x2 * x2) / x2, hi = (x0 * x0 - x0 * x2 * x2) / x2;
  const double a = std::max(lo, 0.0), b = std::min(hi, 1.0);
  if (b <= a) return 0;
  return 2 * (std::sqrt(b) - std::sqrt(a));
}

// Points in (0, 1) where x1_length(x0, .) changes formula.
inline std::vector<double> x2_breakpoints(double x0) {
  const double y = std::fabs(x0);
  std::vector<double> pts{0.0, 1.0};
  auto add = [&](double t) {
    if (t > 0 && t < 1) pts.push_back(t);
  };
  add(std::sqrt(y));
  if (x0 > 0) {
    add(2 * y * y / (1 + std::sqrt(1 + 4 * y * y * y)));  // hi = 1
  } else {
    const double disc = 1 - 4 * y * y * y;
    if (disc >= 0) {  // hi = 1 at two points
      const double s = std::sqrt(disc);
      add(2 * y * y / (1 + s));
      add((1 + s) / (2 * y));
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline double x2_integral(double x0, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
  const auto pts = x2_breakpoints(x0);
  double s = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i], w = pts[i + 1] - pts[i];
    if (w <= 0) continue;
    // Pieces can be far narrower than their offset, so integrate over t in [0, 1].
    s += w * ts.integrate([x0, a, w](double t) { return x1_length(x0, a + w * t); }, 0.0, 1.0, tol);
  }
  return s;
}

}  // namespace detail

struct OmegaInfinity {
  double value = 0;
  double error = 0;  // quadrature error estimate or Monte Carlo standard error
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Reduced quadrature in (x0, x2) with the closed-form x1-length; tanh-sinh
/// in both variables, split where the x2 breakpoints change order.
inline OmegaInfinity omega_infty_quadrature(double tol = 1e-9) {
  if (!(tol > 0)) throw std::invalid_argument("omega_infty_quadrature: tol must be positive");
  const double inner_tol = std::max(tol * 1e-2, 1e-14);
  auto outer = [inner_tol](double u, double sign) {
    // The integrand tends to a finite limit as u -> 0; below 1e-6 it is flat
    // to ~1e-5 and u^4 would underflow.
    u = std::max(u, 1e-6);
    const double u2 = u * u, u4 = u2 * u2;
    return 4 * detail::x2_integral(sign * u4, inner_tol) / (u4 * u);
  };
  // |x0| = (sqrt5 - 1)/2 and 4^{-1/3}.
  const std::vector<double> cuts{0.0, std::pow((std::sqrt(5.0) - 1) / 2, 0.25), std::pow(4.0, -1.0 / 12), 1.0};
  boost::math::quadrature::tanh_sinh<double> ts(15);
  OmegaInfinity r;
  for (double sign : {1.0, -1.0})
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double err = 0, L1 = 0;
      const double a = cuts[i], w = cuts[i + 1] - cuts[i];
      r.value += w * ts.integrate([&](double t) { return outer(a + w * t, sign); }, 0.0, 1.0, tol, &err, &L1);
      r.error += w * err;
    }
  if (!std::isfinite(r.value)) throw NoConvergence("omega_infty_quadrature: non-finite result");
  if (r.error > 100 * tol * std::fabs(r.value)) throw NoConvergence("omega_infty_quadrature: refinement stalled");
  return r;
}

namespace detail {

// Sum of the importance weights of `n` samples drawn from `rng`. Samples live
// in (u, v, w) with x0 = s u^4, x2 = u^2 v, x1 = u^3 w, where dx/x0^2 becomes
// 4 du dv dw and the surface inequality becomes |s v^2 + v w^2| <= 1. Per
// sign s = +-1 (each with probability 1/2):
//   s = +1: v = r^2, w uniform on |w| <= v^{-1/2}     (density 1/4)
//   s = -1: v with density v^{-1/2}/4 on (0,1], v^{-3/2}/4 on (1, inf);
//           w half uniform on |w| <= sqrt(v + 1/v), half on the shell
//           w^2 - v uniform in [max(-v, -1/v), 1/v].
// Membership is decided in the original coordinates.
template <class Rng>
std::pair<double, double> omega_mc_chunk(Rng& rng, std::uint64_t n) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double sum = 0, sum2 = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = U(rng);
    const bool positive = U(rng) < 0.5;
    double v, w, dens;
    if (positive) {
      const double r = U(rng);
      v = r * r;
      const double wmax = 1 / std::sqrt(v);
      w = (2 * U(rng) - 1) * wmax;
      dens = 0.25;
    } else {
      const double r = U(rng);
      const bool low = U(rng) < 0.5;
      v = low ? r * r : 1 / (r * r);
      const double qv = low ? 0.25 / std::sqrt(v) : 0.25 / (v * std::sqrt(v));
      const double W = std::sqrt(v + 1 / v);
      const double slo = std::max(-v, -1 / v), shi = 1 / v;
      const double sgn = U(rng) < 0.5 ? -1.0 : 1.0;
      if (U(rng) < 0.5) {
        w = (2 * U(rng) - 1) * W;
      } else {
        w = sgn * std::sqrt(v + slo + (shi - slo) * U(rng));
      }
      const double s = w * w - v;
      const double q_uniform = std::fabs(w) <= W ? 1 / (2 * W) : 0.0;
      const double q_shell = (s >= slo && s <= shi) ? std::fabs(w) / (shi - slo) : 0.0;
      dens = qv * 0.5 * (q_uniform + q_shell);
    }
    const double u2 = u * u, u4 = u2 * u2;
    const double x0 = positive ? u4 : -u4, x2 = u2 * v, x1 = u2 * u * w;
    const bool inside = std::fabs(x1) <= 1 && x2 <= 1 && std::fabs(x0 * x2 * x2 + x2 * x1 * x1) <= x0 * x0;
    if (inside) {
      const double est = 2 * 4 / dens;  // factor 2 for the sign choice
      sum += est;
      sum2 += est * est;
    }
  }
  return {sum, sum2};
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultMcSeed = 0x5EED'D5C0'FFEEULL;

/// Monte Carlo estimate from `samples` draws split into 64 independently
/// seeded chunks, so the result does not depend on `workers`.
inline OmegaInfinity omega_infty_monte_carlo(std::uint64_t samples, std::uint64_t seed = kDefaultMcSeed,
                                             unsigned workers = 1) {
  if (samples == 0) throw std::invalid_argument("omega_infty_monte_carlo: need at least one sample");
  constexpr std::size_t kChunks = 64;
  auto parts = parallel_map(kChunks, workers, [&](std::size_t c) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(ss);
    const std::uint64_t n = samples / kChunks + (c < samples % kChunks ? 1 : 0);
    return detail::omega_mc_chunk(rng, n);
  });
  double sum = 0, sum2 = 0;
  for (const auto& [s, s2] : parts) {
    sum += s;
    sum2 += s2;
  }
  const double N = static_cast<double>(samples);
  const double mean = sum / N;
  OmegaInfinity r;
  r.value = mean;
  r.error = std::sqrt(std::max(0.0, sum2 / N - mean * mean) / N);
  r.samples = samples;
  r.seed = seed;
  return r;
}

// ---------------------------------------------------------------------------
// The constant
// ---------------------------------------------------------------------------

struct PeyreConstant {
  Rational alpha;
  EulerProduct euler;
  double omega_infty = 0;
  double value = 0;
};

/// alpha * prod_{p <= P} omega_p * omega_infty for a given omega_infty.
inline PeyreConstant c_sh_with(u64 P, double omega_infty) {
  PeyreConstant c;
  c.alpha = alpha_exact();
  c.euler = euler_product(P);
  c.omega_infty = omega_infty;
  c.value = to_double(c.alpha) * c.euler.value * omega_infty;
  return c;
}

inline PeyreConstant c_sh(u64 P = 1'000'000, double tol = 1e-9) { return c_sh_with(P, omega_infty_quadrature(tol).value); }

}  // namespace d5
