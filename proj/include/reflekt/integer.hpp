#ifndef REFLEKT_INTEGER_HPP
#define REFLEKT_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace reflekt {

/// Exact arbitrary-precision integers and rationals. Everything in this
/// library is computed over these types; no floating point enters any
/// certified value.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline Integer num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer den(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integral(const Rational& x) { return den(x) == 1; }

/// Exact integer division; throws if b does not divide a.
inline Integer div_exact(const Integer& a, const Integer& b, const char* ctx = "div_exact") {
  if (b == 0) throw std::domain_error(std::string(ctx) + ": division by zero");
  Integer q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0) throw std::domain_error(std::string(ctx) + ": inexact integer division");
  return q;
}

/// x mod m normalized into [0, m), m > 0.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline long mod_floor(long a, long m) {
  long r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Reduce a rational into [0, span) by subtracting integer multiples of span.
inline Rational mod_span(const Rational& x, const Rational& span) {
  Rational y = x / span;
  Integer k = num(y) / den(y);            // truncation toward zero
  Rational r = x - Rational(k) * span;
  if (r < 0) r += span;
  if (r >= span) r -= span;
  return r;
}

inline int to_int(const Integer& x, const char* ctx = "to_int") {
  if (x > std::numeric_limits<int>::max() || x < std::numeric_limits<int>::min())
    throw std::overflow_error(std::string(ctx) + ": value does not fit in int");
  return static_cast<int>(x);
}

inline long to_long(const Integer& x, const char* ctx = "to_long") {
  if (x > std::numeric_limits<long>::max() || x < std::numeric_limits<long>::min())
    throw std::overflow_error(std::string(ctx) + ": value does not fit in long");
  return static_cast<long>(x);
}

}  // namespace reflekt

#endif
