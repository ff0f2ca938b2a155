#pragma once

// Quadratic exponential sums, sawtooth sums and square-root counts modulo q.

#include "d5/arith.hpp"
#include "d5/integer.hpp"
#include "d5/parallel.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace d5 {

using Complex = std::complex<double>;

namespace detail {

// e(r/q) for r = 0..q-1.
inline std::vector<Complex> roots_of_unity(u64 q) {
  std::vector<Complex> t(q);
  for (u64 r = 0; r < q; ++r) {
    const double th = 2 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    t[r] = Complex(std::cos(th), std::sin(th));
  }
  return t;
}

// Sum over v = 1..q of tab[(a v^2 + b v) mod q], with a, b already reduced.
inline Complex quadratic_sum(const std::vector<Complex>& tab, u64 q, u64 a, u64 b) {
  // r_v = a v^2 + b v; r_{v+1} - r_v = a(2v + 1) + b.
  Complex s = 0;
  u64 r = 0, d = (a + b) % q;
  const u64 a2 = (2 * a) % q;
  for (u64 v = 1; v <= q; ++v) {
    r += d;
    if (r >= q) r -= q;
    s += tab[r];
    d += a2;
    if (d >= q) d -= q;
  }
  return s;
}

}  // namespace detail

/// sum_{v=1}^{q} e_q(a v^2 + b v).
inline Complex s_q(u64 q, i64 a, i64 b) {
  if (q == 0) throw std::invalid_argument("s_q: q must be positive");
  const auto tab = detail::roots_of_unity(q);
  return detail::quadratic_sum(tab, q, static_cast<u64>(mod_pos(a, static_cast<i64>(q))),
                               static_cast<u64>(mod_pos(b, static_cast<i64>(q))));
}

/// q * sum_{x <= q, q | 2ax} e_q(-a x^2 - b x), which equals |S_q(a,b)|^2.
inline double s_q_abs2_convolution(u64 q, i64 a, i64 b) {
  const i64 qi = static_cast<i64>(q);
  Complex s = 0;
  for (i64 x = 1; x <= qi; ++x) {
    if (mod_pos(static_cast<i128>(2) * a * x, qi) != 0) continue;
    const i64 r = static_cast<i64>(mod_pos(-static_cast<i128>(a) * x * x - static_cast<i128>(b) * x, qi));
    const double th = 2 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
    s += Complex(std::cos(th), std::sin(th));
  }
  return static_cast<double>(q) * s.real();
}

struct BoundRatio {
  double ratio = 0;
  u64 q = 0, a = 0, b = 0;
};

/// max |S_q(a,b)| / sqrt(q gcd(q,a)) over q <= qmax, 0 <= a,b < q,
/// gcd(q,a,b) = 1, with the first maximizer in (q, a, b) order.
inline BoundRatio s_q_bound_ratio(u64 qmax, unsigned workers = 1) {
  if (qmax < 1) throw std::invalid_argument("s_q_bound_ratio: qmax must be positive");
  auto per_q = parallel_map(qmax, workers, [](std::size_t i) {
    const u64 q = i + 1;
    const auto tab = detail::roots_of_unity(q);
    BoundRatio best{0, q, 0, 0};
    for (u64 a = 0; a < q; ++a) {
      const u64 h = gcd64(q, a);
      const double norm = std::sqrt(static_cast<double>(q) * static_cast<double>(h));
      // |S_q(a, -b)| = |S_q(a, b)| (substitute v -> -v), so b <= q/2 suffices.
      for (u64 b = 0; 2 * b <= q; ++b) {
        if (gcd64(h, b) != 1) continue;
        const double r = std::abs(detail::quadratic_sum(tab, q, a, b)) / norm;
        if (r > best.ratio + 1e-12) best = {r, q, a, b};
      }
    }
    return best;
  });
  BoundRatio best;
  for (const auto& r : per_q)
    if (r.ratio > best.ratio + 1e-12) best = r;
  return best;
}

/// {t} - 1/2 with {t} in [0, 1).
inline double psi(double t) { return t - std::floor(t) - 0.5; }

namespace detail {

template <bool Coprime>
double psi_sum(u64 q, i64 b, double t) {
  if (q == 0) throw std::invalid_argument("psi_sum: q must be positive");
  if (gcd64s(b, static_cast<i64>(q)) != 1) throw std::invalid_argument("psi_sum: b must be coprime to q");
  const u64 bq = static_cast<u64>(mod_pos(b, static_cast<i64>(q)));
  const double qd = static_cast<double>(q);
  double s = 0;
  // psi has period 1, so only b x^2 mod q matters.
  for (u64 x = Coprime ? 1 : 0; x < q + (Coprime ? 1 : 0); ++x) {
    if (Coprime && gcd64(x, q) != 1) continue;
    const u64 r = static_cast<u64>((static_cast<u128>(bq) * x % q) * x % q);
    s += psi((t - static_cast<double>(r)) / qd);
  }
  return s;
}

}  // namespace detail

/// sum_{1 <= x <= q, (x,q)=1} psi((t - b x^2)/q).
inline double psi_sum_coprime(u64 q, i64 b, double t) { return detail::psi_sum<true>(q, b, t); }

/// sum_{0 <= x < q} psi((t - b x^2)/q).
inline double psi_sum_all(u64 q, i64 b, double t) { return detail::psi_sum<false>(q, b, t); }

/// Normalizers h_1(q) log(q+1) sqrt(q) and g(q) log(q+1) sqrt(q).
inline double psi_coprime_scale(u64 q) {
  const double qd = static_cast<double>(q);
  return h_k(factor(q), 1) * std::log(qd + 1) * std::sqrt(qd);
}
inline double psi_all_scale(u64 q) {
  const double qd = static_cast<double>(q);
  return g_fn(factor(q)) * std::log(qd + 1) * std::sqrt(qd);
}

struct PsiScan {
  double coprime = 0;  // max |sum| / psi_coprime_scale
  double all = 0;      // max |sum| / psi_all_scale
};

/// Max normalized psi sums over q in (qlo, qhi], with t = 0, t = 1/2 and
/// `samples` random (b, t) per q, t uniform in [0, q).
inline PsiScan psi_ratio_scan(u64 qlo, u64 qhi, int samples, u64 seed, unsigned workers = 1) {
  auto per_q = parallel_map(qhi > qlo ? qhi - qlo : 0, workers, [&](std::size_t i) {
    const u64 q = qlo + 1 + i;
    std::mt19937_64 rng(seed ^ (q * 0x9E3779B97F4A7C15ULL));
    std::uniform_int_distribution<u64> bd(1, q);
    std::uniform_real_distribution<double> td(0, static_cast<double>(q));
    const double sc = psi_coprime_scale(q), sa = psi_all_scale(q);
    PsiScan best;
    auto probe = [&](i64 b, double t) {
      best.coprime = std::max(best.coprime, std::abs(psi_sum_coprime(q, b, t)) / sc);
      best.all = std::max(best.all, std::abs(psi_sum_all(q, b, t)) / sa);
    };
    probe(1, 0);
    probe(1, 0.5);
    for (int s = 0; s < samples; ++s) {
      u64 b;
      do b = bd(rng) % q; while (gcd64(b, q) != 1);
      probe(static_cast<i64>(b), td(rng));
    }
    return best;
  });
  PsiScan best;
  for (const auto& p : per_q) {
    best.coprime = std::max(best.coprime, p.coprime);
    best.all = std::max(best.all, p.all);
  }
  return best;
}

/// #{1 <= n <= q : n^2 = alpha (mod q)}.
inline u64 eta_count(i64 alpha, u64 q) {
  if (q == 0) throw std::invalid_argument("eta_count: q must be positive");
  const u64 target = static_cast<u64>(mod_pos(alpha, static_cast<i64>(q)));
  u64 c = 0;
  for (u64 n = 1; n <= q; ++n)
    if (static_cast<u64>(static_cast<u128>(n) * n % q) == target) ++c;
  return c;
}

/// eta_count(r, q) for every residue r at once.
inline std::vector<u64> eta_counts(u64 q) {
  std::vector<u64> c(q, 0);
  for (u64 n = 1; n <= q; ++n) ++c[static_cast<u64>(static_cast<u128>(n) * n % q)];
  return c;
}

struct CongruenceCheck {
  double lhs = 0;
  double main = 0;
};

/// lhs = sum over rho <= q coprime to q and t1 < n <= t2 with n = alpha rho^2
/// (mod q) of f_{a,b}(n); main = (t2 - t1) phi*(bq) (6/pi^2) prod_{p | abq} (1 - p^-2)^-1.
inline CongruenceCheck congruence_main_term_check(u64 a, u64 b, u64 q, i64 alpha, u64 t1, u64 t2) {
  if (a == 0 || b == 0 || q == 0) throw std::invalid_argument("congruence_main_term_check: a, b, q must be positive");
  if (gcd64s(alpha, static_cast<i64>(q)) != 1) throw std::invalid_argument("congruence_main_term_check: alpha must be coprime to q");
  if (t2 < t1) throw std::invalid_argument("congruence_main_term_check: t1 > t2");
  std::vector<u64> cnt(q, 0);
  const u64 al = static_cast<u64>(mod_pos(alpha, static_cast<i64>(q)));
  for (u64 rho = 1; rho <= q; ++rho)
    if (gcd64(rho, q) == 1) ++cnt[static_cast<u64>(static_cast<u128>(al) * rho % q * rho % q)];
  CongruenceCheck out;
  for (u64 n = t1 + 1; n <= t2; ++n) {
    const u64 c = cnt[n % q];
    if (c) out.lhs += static_cast<double>(c) * f_ab_double(a, b, n);
  }
  const FactoredInteger abq = factor(a * b * q);
  double local = 1;
  for (const auto& [p, e] : abq.factors) local /= 1.0 - 1.0 / (static_cast<double>(p) * static_cast<double>(p));
  out.main = static_cast<double>(t2 - t1) * phi_star_double(factor(b * q)) * 6.0 / (std::numbers::pi * std::numbers::pi) * local;
  return out;
}

/// The error shape 2^omega(b) log(t2 + 2) h_1(q) log(q + 1) q^{1/2}.
inline double congruence_error_scale(u64 b, u64 q, u64 t2) {
  const double qd = static_cast<double>(q);
  return std::ldexp(1.0, omega_distinct(factor(b))) * std::log(static_cast<double>(t2) + 2) * h_k(factor(q), 1) *
         std::log(qd + 1) * std::sqrt(qd);
}

/// Interval [t1, t2], modulus q, coprime b and c, and f with monotone,
/// single-signed f' on the interval (caller's contract).
struct SIQuery {
  double t1 = 0, t2 = 0;
  u64 q = 1;
  i64 b = 1, c = 1;
  std::function<double(double)> f;
  double lambda0 = 1;
};

/// sum over integers x in I and y <= q coprime to q with y^2 = b x (mod q)
/// of psi((f(x) - c y)/q).
inline double s_I(const SIQuery& s) {
  if (s.q == 0) throw std::invalid_argument("s_I: q must be positive");
  if (s.t1 > s.t2) throw std::invalid_argument("s_I: empty interval orientation");
  if (gcd64s(s.b * s.c, static_cast<i64>(s.q)) != 1) throw std::invalid_argument("s_I: b c must be coprime to q");
  const u64 q = s.q;
  // Coprime y grouped by y^2 mod q.
  std::vector<std::vector<u64>> roots(q);
  for (u64 y = 1; y <= q; ++y)
    if (gcd64(y, q) == 1) roots[static_cast<u64>(static_cast<u128>(y) * y % q)].push_back(y);
  const i64 bq = static_cast<i64>(mod_pos(s.b, static_cast<i64>(q)));
  const i64 cq = static_cast<i64>(mod_pos(s.c, static_cast<i64>(q)));
  double total = 0;
  for (i64 x = static_cast<i64>(std::ceil(s.t1)); static_cast<double>(x) <= s.t2; ++x) {
    const auto& ys = roots[static_cast<u64>(mod_pos(static_cast<i128>(bq) * x, static_cast<i64>(q)))];
    if (ys.empty()) continue;
    const double fx = s.f(static_cast<double>(x));
    for (u64 y : ys) {
      const double cy = static_cast<double>(static_cast<u64>(static_cast<u128>(cq) * y % q));
      total += psi((fx - cy) / static_cast<double>(q));
    }
  }
  return total;
}

/// Grid spot check of the SIQuery contract: forward differences of f are
/// monotone and of one sign, and |f(t2) - f(t1)| + 1 <= lambda0.
inline bool si_contract_ok(const SIQuery& s, int grid = 64) {
  if (!(s.t1 <= s.t2) || s.lambda0 < 1 || !s.f) return false;
  if (std::abs(s.f(s.t2) - s.f(s.t1)) + 1 > s.lambda0 * (1 + 1e-12)) return false;
  if (s.t1 == s.t2) return true;
  const double h = (s.t2 - s.t1) / grid;
  std::vector<double> d;
  for (int i = 0; i < grid; ++i) d.push_back(s.f(s.t1 + (i + 1) * h) - s.f(s.t1 + i * h));
  bool up = true, down = true;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] < d[i - 1]) up = false;
    if (d[i] > d[i - 1]) down = false;
    if ((d[i] > 0) != (d[0] > 0) && d[i] != 0) return false;
  }
  return up || down;
}

/// (h_2(q) q^{1/2} + tau(q)^2 m/q + h_1(q) lambda0^{1/2} m^{1/2} / (q^{1/4} log X)) (log X)^2
/// with m = |I| + 2 and X = q m.
inline double s_I_bound_shape(const SIQuery& s) {
  const auto fq = factor(s.q);
  const double q = static_cast<double>(s.q), m = s.t2 - s.t1 + 2, L = std::log(q * m);
  const double tq = static_cast<double>(tau(fq));
  return (h_k(fq, 2) * std::sqrt(q) + tq * tq * m / q + h_k(fq, 1) / L * std::sqrt(s.lambda0 * m) / std::pow(q, 0.25)) * L * L;
}

}  // namespace d5
