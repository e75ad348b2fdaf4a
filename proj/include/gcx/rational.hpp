#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "gcx/error.hpp"

namespace gcx {

/// Exact rational scalar. mpq_class keeps gcd(num, den) = 1 and den > 0
/// after every arithmetic operation, which is exactly the invariant we need.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact value of a double (every finite double is dyadic).
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "non-finite double");
  return Rational(x);
}

/// Parses "p", "-p" or "p/q".
inline Rational rational_from_string(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (sgn(den) == 0) throw Error(ErrorKind::BadInput, "zero denominator: " + text);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::BadInput, "not a rational: " + text);
  }
}

/// Canonical rendering: "p" or "p/q" with q > 1.
inline std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace gcx
