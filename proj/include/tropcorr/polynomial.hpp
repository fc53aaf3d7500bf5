#pragma once

// Univariate polynomials over Q, Sturm sequences and rational intervals.

#include <span>
#include <string>
#include <vector>

#include "tropcorr/rational.hpp"

namespace tropcorr {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients in ascending order of degree; trailing zeros are trimmed.
  explicit Polynomial(std::vector<Rational> ascending);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }
  Rational operator()(const Rational& x) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend Polynomial operator-(const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
Polynomial derivative(const Polynomial& p);
Polynomial monic(const Polynomial& p);
/// Monic gcd; zero only when both inputs are zero.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// s with s * a = 1 modulo m. Requires gcd(a, m) = 1.
Polynomial inverse_mod(const Polynomial& a, const Polynomial& m);
/// p / gcd(p, p'), monic.
Polynomial square_free_part(const Polynomial& p);
/// Primitive integer multiple with positive leading coefficient.
std::vector<Integer> integer_cleared(const Polynomial& p);
/// 1 + max |a_k / a_n|: every real root lies strictly inside (-B, B).
Rational cauchy_bound(const Polynomial& p);

std::string to_string(const Polynomial& p, char var = 'x');

class SturmSequence {
 public:
  /// `p` must be square-free and nonzero.
  explicit SturmSequence(const Polynomial& p);
  int variations(const Rational& x) const;
  /// Number of distinct real roots in (a, b], a < b.
  int count(const Rational& a, const Rational& b) const;

 private:
  std::vector<Polynomial> chain_;
};

struct Interval {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Horner evaluation in interval arithmetic; encloses p over [x.lo, x.hi].
Interval evaluate(const Polynomial& p, const Interval& x);

/// Fraction with the smallest denominator strictly between lo and hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace tropcorr
