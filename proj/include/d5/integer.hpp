#pragma once

// 128-bit integer helpers shared by the enumeration code.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <algorithm>

namespace d5 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when a monomial leaves the 128-bit budget.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when a request exceeds a configured work ceiling.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr i128 abs128(i128 x) { return x < 0 ? -x : x; }

/// gcd with the convention gcd(0, n) = |n|.
constexpr i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr u64 gcd64(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i64 gcd64s(i64 a, i64 b) {
  return static_cast<i64>(gcd64(static_cast<u64>(a < 0 ? -a : a), static_cast<u64>(b < 0 ? -b : b)));
}

/// Multiplication that throws instead of wrapping.
inline i128 mul_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

inline i128 add_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline i128 pow_checked(i128 base, unsigned e) {
  i128 r = 1;
  for (unsigned i = 0; i < e; ++i) r = mul_checked(r, base);
  return r;
}

/// floor(sqrt(n)) for n >= 0.
inline u128 isqrt(u128 n) {
  if (n < 2) return n;
  long double approx = __builtin_sqrtl(static_cast<long double>(n));
  u128 r = static_cast<u128>(approx);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// floor(a / b) for b > 0.
constexpr i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

/// ceil(a / b) for b > 0.
constexpr i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

/// Nonnegative residue of a mod m, m > 0.
constexpr i128 mod_pos(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

/// Inverse of a modulo m (gcd(a, m) must be 1). m = 1 yields 0.
inline i64 mod_inverse(i64 a, i64 m) {
  if (m == 1) return 0;
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = mod_pos(a, m);
  while (new_r != 0) {
    i128 q = r / new_r;
    i128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inverse: not invertible");
  return static_cast<i64>(mod_pos(t, m));
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace d5
