#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cgk {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int pow_int(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline Rational pow2(int exp) {
  if (exp >= 0) return Rational(pow_int(2, static_cast<unsigned>(exp)));
  return Rational(1, pow_int(2, static_cast<unsigned>(-exp)));
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// "p/q" (or "p" when q == 1); bigint safe.
std::string rational_string(const Rational& r);

/// Decimal rendering; exact when terminating within max_digits, else rounded.
std::string decimal_string(const Rational& r, int max_digits = 40);

Rational rational_from_string(const std::string& s);

}  // namespace cgk
