#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tenfact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

// Representative of v modulo 1 in [0, 1).
inline Rational mod_one(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer num = numerator(v);
  Integer den = denominator(v);
  Integer r = num % den;
  if (r < 0) r += den;
  return Rational(r, den);
}

// Nonnegative remainder.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace tenfact
