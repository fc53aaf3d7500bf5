#include "tropcorr/polynomial.hpp"

#include <algorithm>

#include "tropcorr/errors.hpp"

namespace tropcorr {

Polynomial::Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p) {
  std::vector<Rational> c = p.coeffs_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return Polynomial::constant(c) * p; }

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(Errc::Internal, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = rem[static_cast<std::size_t>(k)] / b.leading();
    quot[static_cast<std::size_t>(k - db)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<Rational> c(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) c[static_cast<std::size_t>(k - 1)] = p.coeffs()[static_cast<std::size_t>(k)] * k;
  return Polynomial(std::move(c));
}

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return (1 / p.leading()) * p;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Polynomial inverse_mod(const Polynomial& a, const Polynomial& m) {
  // Extended Euclid tracking only the coefficient of a.
  Polynomial r0 = m, r1 = a % m;
  Polynomial s0, s1 = Polynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Polynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw Error(Errc::Internal, "inverse_mod: not coprime");
  return ((1 / r0.leading()) * s0) % m;
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.degree() < 1) return monic(p);
  return monic(divmod(p, gcd(p, derivative(p))).quotient);
}

std::vector<Integer> integer_cleared(const Polynomial& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (g == 0) return out;
  if (sgn(p.leading()) < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading());
    if (r > m) m = r;
  }
  return 1 + m;
}

std::string to_string(const Polynomial& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeffs()[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (k == 0 || c != 1) out += to_string(c);
    if (k >= 1) out += var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw Error(Errc::Internal, "Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  chain_.push_back(derivative(p));
  while (!chain_.back().is_zero()) {
    chain_.push_back(-(chain_[chain_.size() - 2] % chain_.back()));
  }
  chain_.pop_back();
}

int SturmSequence::variations(const Rational& x) const {
  int changes = 0, last = 0;
  for (const auto& q : chain_) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval evaluate(const Polynomial& p, const Interval& x) {
  Interval acc{0, 0};
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + Interval{*it, *it};
  return acc;
}

namespace {

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Simplest fraction in (lo, hi), or in (lo, oo) when hi_infinite.
Rational simplest_in(const Rational& lo, const Rational& hi, bool hi_infinite) {
  const Integer f = floor_of(lo);
  if (hi_infinite || Rational(f + 1) < hi) return Rational(f + 1);
  const Rational frac = lo - f;
  // lo and hi lie in [f, f + 1]; recurse on reciprocals of the fractional parts.
  const Rational inner_lo = 1 / (hi - f);
  Rational inner;
  if (sgn(frac) == 0) {
    inner = simplest_in(inner_lo, 0, true);
  } else {
    inner = simplest_in(inner_lo, 1 / frac, false);
  }
  return f + 1 / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(Errc::Internal, "simplest_between needs lo < hi");
  return simplest_in(lo, hi, false);
}

}  // namespace tropcorr
