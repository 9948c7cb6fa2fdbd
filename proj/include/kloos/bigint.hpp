#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "kloos/errors.hpp"

namespace kloos {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline BigInt ipow(const BigInt& base, unsigned long exponent) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

/// Rational power with a possibly negative exponent.
inline Rational rpow(const Rational& base, long exponent) {
  if (exponent >= 0) {
    Rational out = 1;
    for (long i = 0; i < exponent; ++i) out *= base;
    return out;
  }
  if (base == 0) throw DomainError("rpow: zero to a negative power");
  Rational out = 1;
  for (long i = 0; i < -exponent; ++i) out /= base;
  return out;
}

/// a / b, throwing ConsistencyError (tagged with `what`) unless b divides a.
inline BigInt exact_div(const BigInt& a, const BigInt& b, std::string_view what) {
  if (b == 0) throw ConsistencyError(std::string(what) + ": division by zero");
  BigInt quot;
  BigInt rem;
  boost::multiprecision::divide_qr(a, b, quot, rem);
  if (rem != 0) {
    throw ConsistencyError(std::string(what) + ": " + a.str() + " is not divisible by " + b.str());
  }
  return quot;
}

inline BigInt to_integer(const Rational& x, std::string_view what) {
  if (boost::multiprecision::denominator(x) != 1) {
    throw ConsistencyError(std::string(what) + ": non-integral value " + x.str());
  }
  return boost::multiprecision::numerator(x);
}

inline BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

/// n choose k for an arbitrary nonnegative big n; zero when k > n.
inline BigInt binomial(const BigInt& n, unsigned k) {
  if (n < 0) throw DomainError("binomial: negative top " + n.str());
  if (n < k) return 0;
  BigInt num = 1;
  for (unsigned i = 0; i < k; ++i) num *= (n - i);
  return num / factorial(k);
}

/// c! / (a! b! (c-a-b)!), and 0 when a + b > c.
inline BigInt multinomial(const BigInt& c, unsigned a, unsigned b) {
  if (c < 0) throw DomainError("multinomial: negative top " + c.str());
  if (c < BigInt(a) + b) return 0;
  BigInt falling = 1;
  for (unsigned i = 0; i < a + b; ++i) falling *= (c - i);
  return falling / (factorial(a) * factorial(b));
}

inline bool fits_int64(const BigInt& x) {
  return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace kloos
