#pragma once

// Multiplicative arithmetic functions on top of a linear sieve.

#include "d5/integer.hpp"
#include "d5/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace d5 {

/// n together with its factorization, primes strictly increasing.
struct FactoredInteger {
  u64 n = 1;
  std::vector<std::pair<u64, int>> factors;
};

/// Smallest-prime-factor table up to `limit`; trial division beyond it.
class Sieve {
 public:
  explicit Sieve(u64 limit = 1'000'000) : spf_(limit + 1, 0) {
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(i);
      }
      for (u64 p : primes_) {
        if (p > spf_[i] || p * i > limit) break;
        spf_[p * i] = static_cast<std::uint32_t>(p);
      }
    }
  }

  u64 limit() const { return spf_.size() - 1; }
  const std::vector<u64>& primes() const { return primes_; }

  bool is_prime(u64 n) const {
    if (n <= limit()) return n >= 2 && spf_[n] == n;
    const auto f = factor(n);
    return f.factors.size() == 1 && f.factors[0].second == 1;
  }

  FactoredInteger factor(u64 n) const {
    if (n == 0) throw std::invalid_argument("factor: n must be positive");
    FactoredInteger f{n, {}};
    auto push = [&f](u64 p) {
      if (!f.factors.empty() && f.factors.back().first == p)
        ++f.factors.back().second;
      else
        f.factors.emplace_back(p, 1);
    };
    u64 m = n;
    if (m > limit()) {
      for (u64 p = 2; p * p <= m && m > limit(); p += (p == 2 ? 1 : 2))
        while (m % p == 0) {
          push(p);
          m /= p;
        }
      if (m > limit()) {
        push(m);
        return f;
      }
    }
    while (m > 1) {
      const u64 p = spf_[m];
      push(p);
      m /= p;
    }
    return f;
  }

 private:
  std::vector<std::uint32_t> spf_;
  std::vector<u64> primes_;
};

/// Shared sieve up to 10^6, built on first use.
inline const Sieve& default_sieve() {
  static const Sieve s(1'000'000);
  return s;
}

inline FactoredInteger factor(u64 n) { return default_sieve().factor(n); }

/// Primes up to n (plain Eratosthenes, independent of the shared sieve).
inline std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

inline Rational phi_star(const FactoredInteger& q) {
  Rational r = 1;
  for (const auto& [p, e] : q.factors) r *= Rational(BigInt(p - 1), BigInt(p));
  return r;
}

inline double phi_star_double(const FactoredInteger& q) {
  double r = 1;
  for (const auto& [p, e] : q.factors) r *= 1.0 - 1.0 / static_cast<double>(p);
  return r;
}

/// sum over d | q of d^{-1/2}, via the Euler factors 1 + p^{-1/2} + ... + p^{-e/2}.
inline double g_fn(const FactoredInteger& q) {
  double r = 1;
  for (const auto& [p, e] : q.factors) {
    const double s = 1.0 / std::sqrt(static_cast<double>(p));
    double term = 1, local = 1;
    for (int j = 0; j < e; ++j) local += (term *= s);
    r *= local;
  }
  return r;
}

inline int omega_distinct(const FactoredInteger& q) { return static_cast<int>(q.factors.size()); }

inline double h_k(const FactoredInteger& q, int k) {
  if (k < 1) throw std::invalid_argument("h_k: k must be positive");
  return std::ldexp(std::pow(g_fn(q), k), omega_distinct(q));
}

inline int mobius(const FactoredInteger& q) {
  for (const auto& [p, e] : q.factors)
    if (e > 1) return 0;
  return q.factors.size() % 2 ? -1 : 1;
}

inline u64 tau(const FactoredInteger& q) {
  u64 r = 1;
  for (const auto& [p, e] : q.factors) r *= static_cast<u64>(e + 1);
  return r;
}

inline u64 sigma(const FactoredInteger& q) {
  u64 r = 1;
  for (const auto& [p, e] : q.factors) {
    u64 pk = 1, local = 1;
    for (int j = 0; j < e; ++j) local += (pk *= p);
    r *= local;
  }
  return r;
}

/// phi*(n)/phi*(gcd(n, a)) if gcd(n, b) = 1, else 0.
inline Rational f_ab(u64 a, u64 b, u64 n) {
  if (a == 0 || b == 0 || n == 0) throw std::invalid_argument("f_ab: arguments must be positive");
  if (gcd64(n, b) != 1) return 0;
  return phi_star(factor(n)) / phi_star(factor(gcd64(n, a)));
}

inline double f_ab_double(u64 a, u64 b, u64 n) {
  if (gcd64(n, b) != 1) return 0;
  return phi_star_double(factor(n)) / phi_star_double(factor(gcd64(n, a)));
}

/// (sum_{q <= Q} h_k(q)) / (Q log Q).
inline double sum_h_k_ratio(u64 Q, int k) {
  if (Q < 3) throw std::invalid_argument("sum_h_k_ratio: Q must be at least 3");
  const Sieve local(Q > default_sieve().limit() ? Q : 0);
  const Sieve& s = Q > default_sieve().limit() ? local : default_sieve();
  double sum = 0;
  for (u64 q = 1; q <= Q; ++q) sum += h_k(s.factor(q), k);
  return sum / (static_cast<double>(Q) * std::log(static_cast<double>(Q)));
}

}  // namespace d5
