#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tropcorr {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Accepts "p", "-p", "p/q". Throws Error(ParseError) on anything else or q == 0.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace tropcorr
