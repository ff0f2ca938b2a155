#pragma once

// Exact rationals are boost::multiprecision::cpp_rational; always reduced,
// denominator positive.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace d5 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

}  // namespace d5
