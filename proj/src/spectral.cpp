#include "tropcorr/spectral.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tropcorr/errors.hpp"

namespace tropcorr {

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix id(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

RationalVector multiply(const RationalMatrix& m, std::span<const Rational> v) {
  RationalVector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw Error(Errc::NotSquare, "matrix and vector sizes differ");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

std::size_t square_dimension(const RationalMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) {
      throw Error(Errc::NotSquare, "matrix has " + std::to_string(m.size()) + " rows but a row of length " +
                                       std::to_string(row.size()));
    }
  }
  return m.size();
}

Polynomial charpoly(const RationalMatrix& a) {
  const std::size_t n = square_dimension(a);
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix mk = identity_matrix(n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix am(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (sgn(a[i][l]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * mk[l][j];
      }
    }
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
    c[n - k] = -trace / static_cast<long>(k);
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k];
    mk = std::move(am);
  }
  return Polynomial(std::move(c));
}

namespace {

struct Echelon {
  RationalMatrix rows;
  std::vector<std::size_t> pivots;
};

Echelon rref(RationalMatrix m) {
  Echelon e;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

}  // namespace

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  const Echelon e = rref(m);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : e.pivots) is_pivot[c] = 1;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

RationalVector primitive_integer(RationalVector v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  for (auto& x : v) x *= den;
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  if (g == 0) throw Error(Errc::Internal, "primitive_integer of the zero vector");
  for (auto& x : v) x /= g;
  return v;
}

namespace {

// Arithmetic in Q(lambda), lambda the unique root of `f` in the interval.
// When an element shares a factor with f, f is split and the part that
// vanishes at lambda is kept.
class RootContext {
 public:
  RootContext(Polynomial f, Interval interval) : f_(monic(f)), interval_(std::move(interval)) {}

  const Polynomial& modulus() const { return f_; }
  const Interval& interval() const { return interval_; }
  Polynomial reduce(const Polynomial& g) const { return g % f_; }

  bool is_zero(const Polynomial& value) {
    const Polynomial g = value % f_;
    if (g.is_zero()) return true;
    const Polynomial h = gcd(g, f_);
    if (h.degree() == 0) return false;
    if (SturmSequence(h).count(interval_.lo, interval_.hi) == 1) {
      f_ = h;
      return true;
    }
    f_ = monic(divmod(f_, h).quotient);
    return false;
  }

  Polynomial inverse(const Polynomial& g) { return inverse_mod(g % f_, f_); }

  void bisect() {
    const Rational mid = (interval_.lo + interval_.hi) / 2;
    if (SturmSequence(f_).count(interval_.lo, mid) == 1) {
      interval_.hi = mid;
    } else {
      interval_.lo = mid;
    }
  }

  int sign(const Polynomial& value) {
    if (is_zero(value)) return 0;
    const Polynomial g = value % f_;
    const SturmSequence roots(square_free_part(g));
    while (roots.count(interval_.lo, interval_.hi) != 0) bisect();
    return sgn(g(interval_.hi));
  }

 private:
  Polynomial f_;
  Interval interval_;
};

std::vector<std::vector<Polynomial>> algebraic_nullspace(const RationalMatrix& m, RootContext& ctx) {
  const std::size_t n = m.size();
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Polynomial::constant(m[i][j]);
      if (i == j) a[i][j] = a[i][j] - Polynomial::monomial(1, 1);
    }
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && ctx.is_zero(a[p][c])) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    const Polynomial inv = ctx.inverse(a[r][c]);
    for (auto& x : a[r]) x = ctx.reduce(x * inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || ctx.is_zero(a[i][c])) continue;
      const Polynomial f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = ctx.reduce(a[i][j] - f * a[r][j]);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Polynomial>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Polynomial> v(n);
    v[f] = Polynomial::constant(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  for (auto& v : basis) {
    for (auto& x : v) x = ctx.reduce(x);
  }
  return basis;
}

int sign_vs_root(const Polynomial& factor, const Interval& iso, const Rational& r) {
  // lambda is the only root of `factor` in (lo, hi].
  if (r > iso.hi) return -1;
  if (r <= iso.lo) return 1;
  if (sgn(factor(r)) == 0) return 0;
  return SturmSequence(factor).count(iso.lo, r) == 1 ? -1 : 1;
}

double approximate(const Polynomial& factor, Interval iso) {
  const SturmSequence roots(factor);
  const Rational eps(Integer(1), Integer(1) << 60);
  while (iso.width() > eps) {
    const Rational mid = (iso.lo + iso.hi) / 2;
    if (roots.count(iso.lo, mid) == 1) {
      iso.hi = mid;
    } else {
      iso.lo = mid;
    }
  }
  return iso.hi.get_d();
}

}  // namespace

int compare_root(const EigenCertificate& cert, const Rational& r) {
  if (cert.rational) return cmp(*cert.rational, r) < 0 ? -1 : (cmp(*cert.rational, r) > 0 ? 1 : 0);
  return sign_vs_root(cert.factor, cert.isolating, r);
}

EigenCertificate dominant_eigenvalue(const RationalMatrix& m) {
  const std::size_t n = square_dimension(m);
  if (n == 0) throw Error(Errc::NotSquare, "the empty matrix has no dominant eigenvalue");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(m[i][j]) < 0) {
        throw Error(Errc::NegativeEntry, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is negative");
      }
    }
  }

  EigenCertificate cert;
  cert.charpoly = charpoly(m);
  const Polynomial q = square_free_part(cert.charpoly);
  const SturmSequence roots(q);
  const Rational bound = cauchy_bound(q);
  // The spectral radius of a nonnegative matrix is its largest real eigenvalue.
  Interval iso{-bound, bound};
  const Integer lead = integer_cleared(q).back();
  const Rational precision(Integer(1), lead * lead);
  auto step = [&] {
    const Rational mid = (iso.lo + iso.hi) / 2;
    if (roots.count(mid, iso.hi) >= 1) {
      iso.lo = mid;
    } else {
      iso.hi = mid;
    }
  };
  while (roots.count(iso.lo, iso.hi) > 1 || iso.width() >= precision) step();

  if (sgn(q(iso.hi)) == 0) {
    cert.rational = iso.hi;
  } else {
    const Rational candidate = simplest_between(iso.lo, iso.hi);
    if (sgn(q(candidate)) == 0) cert.rational = candidate;
  }

  if (cert.rational) {
    const Rational lambda = *cert.rational;
    cert.factor = Polynomial({-lambda, 1});
    cert.isolating = iso;
    const EigenCone cone = eigencone_basis(m, cert);
    cert.eigvec = cone.rays.front();
    cert.approx = lambda.get_d();
  } else {
    RootContext ctx(q, iso);
    const auto basis = algebraic_nullspace(m, ctx);
    std::optional<std::vector<Polynomial>> chosen;
    for (const auto& v : basis) {
      int lo = 0, hi = 0;
      for (const auto& x : v) {
        const int s = ctx.sign(x);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      if (lo < 0 && hi > 0) continue;
      chosen = v;
      if (lo < 0) {
        for (auto& x : *chosen) x = -x;
      }
      break;
    }
    if (!chosen) {
      throw Error(Errc::IrrationalEigenvalueUnsupported,
                  "no basis vector of the irrational eigenspace is sign-definite");
    }
    // Shrink until every nonzero entry has a strictly positive enclosure.
    while (true) {
      bool separated = true;
      for (const auto& x : *chosen) {
        if (!x.is_zero() && sgn(evaluate(x, ctx.interval()).lo) <= 0) separated = false;
      }
      if (separated) break;
      ctx.bisect();
    }
    cert.factor = ctx.modulus();
    cert.isolating = ctx.interval();
    cert.eigvec_poly = *chosen;
    for (const auto& x : *chosen) cert.eigvec_enclosure.push_back(evaluate(x, cert.isolating));
    cert.approx = approximate(cert.factor, cert.isolating);
  }
  cert.compare_to_one = compare_root(cert, 1);
  return cert;
}

void verify_certificate(const RationalMatrix& m, const EigenCertificate& cert) {
  auto fail = [](const std::string& what) { throw Error(Errc::Internal, "certificate check failed: " + what); };
  const std::size_t n = square_dimension(m);
  if (cert.charpoly != charpoly(m)) fail("characteristic polynomial");
  if (cert.factor.degree() < 1 || !(cert.charpoly % cert.factor).is_zero()) fail("factor does not divide");
  if (gcd(cert.factor, derivative(cert.factor)).degree() != 0) fail("factor is not square-free");
  const Polynomial q = square_free_part(cert.charpoly);
  const SturmSequence roots(q);
  const Interval& iso = cert.isolating;
  if (!(iso.lo < iso.hi)) fail("empty interval");
  if (roots.count(iso.lo, iso.hi) != 1) fail("interval does not isolate one root");
  const Rational bound = cauchy_bound(q);
  if (iso.hi < bound && roots.count(iso.hi, bound) != 0) fail("a larger real root exists");
  if (SturmSequence(cert.factor).count(iso.lo, iso.hi) != 1) fail("factor root not in interval");

  if (cert.rational) {
    const Rational& lambda = *cert.rational;
    if (!(iso.lo < lambda && lambda <= iso.hi) || sgn(cert.factor(lambda)) != 0) fail("rational value");
    if (cert.eigvec.size() != n) fail("eigenvector size");
    bool nonzero = false;
    for (const auto& x : cert.eigvec) {
      if (sgn(x) < 0) fail("negative eigenvector entry");
      nonzero |= sgn(x) != 0;
    }
    if (!nonzero) fail("zero eigenvector");
    const RationalVector mv = multiply(m, cert.eigvec);
    for (std::size_t i = 0; i < n; ++i) {
      if (mv[i] != lambda * cert.eigvec[i]) fail("residual is not zero");
    }
  } else {
    if (cert.eigvec_poly.size() != n || cert.eigvec_enclosure.size() != n) fail("eigenvector size");
    const Polynomial x = Polynomial::monomial(1, 1);
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial row;
      for (std::size_t j = 0; j < n; ++j) row = row + m[i][j] * cert.eigvec_poly[j];
      if (!((row - x * cert.eigvec_poly[i]) % cert.factor).is_zero()) fail("algebraic residual is not zero");
    }
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial& v = cert.eigvec_poly[i];
      if (v.is_zero()) continue;
      const Interval e = evaluate(v, iso);
      if (!(e == cert.eigvec_enclosure[i]) || sgn(e.lo) <= 0) fail("eigenvector enclosure");
      nonzero = true;
    }
    if (!nonzero) fail("zero eigenvector");
  }
  if (cert.compare_to_one != compare_root(cert, 1)) fail("comparison with 1");
}

CollatzWielandt collatz_wielandt(const RationalMatrix& m, std::span<const Rational> probe) {
  const RationalVector mx = multiply(m, probe);
  CollatzWielandt cw;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    if (sgn(probe[i]) <= 0) throw Error(Errc::Internal, "Collatz-Wielandt probe must be positive");
    const Rational r = mx[i] / probe[i];
    if (i == 0 || r < cw.lower) cw.lower = r;
    if (i == 0 || r > cw.upper) cw.upper = r;
  }
  return cw;
}

EigenCone eigencone_basis(const RationalMatrix& m, const EigenCertificate& cert) {
  if (!cert.rational) {
    throw Error(Errc::IrrationalEigenvalueUnsupported, "eigencone needs a rational eigenvalue; use the certified eigenvector");
  }
  const std::size_t n = square_dimension(m);
  RationalMatrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= *cert.rational;
  EigenCone cone;
  cone.basis = nullspace(shifted);
  cone.dimension = cone.basis.size();
  const std::size_t k = cone.dimension;
  if (k == 0) throw Error(Errc::Internal, "eigenvalue has a trivial eigenspace");

  // v = B t with B the n x k basis matrix. Extreme rays of {t : B t >= 0}
  // are cut out by k - 1 independent active rows.
  auto row_of = [&](std::size_t i) {
    RationalVector r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = cone.basis[j][i];
    return r;
  };
  std::set<RationalVector, std::greater<>> rays;
  auto consider = [&](const RationalVector& t) {
    RationalVector v(n);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < n; ++i) v[i] += cone.basis[j][i] * t[j];
    }
    int lo = 0, hi = 0;
    for (const auto& x : v) {
      lo = std::min(lo, sgn(x));
      hi = std::max(hi, sgn(x));
    }
    if (lo < 0 && hi > 0) return;
    if (lo == 0 && hi == 0) return;
    if (lo < 0) {
      for (auto& x : v) x = -x;
    }
    rays.insert(primitive_integer(std::move(v)));
  };
  if (k == 1) {
    consider(RationalVector{1});
  } else {
    std::vector<std::size_t> pick(k - 1);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
      if (depth == k - 1) {
        RationalMatrix sub;
        for (auto i : pick) sub.push_back(row_of(i));
        if (rank(sub) != k - 1) return;
        consider(nullspace(sub).front());
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        pick[depth] = i;
        choose(i + 1, depth + 1);
      }
    };
    choose(0, 0);
  }
  if (rays.empty()) throw Error(Errc::Internal, "eigenspace meets the orthant only at 0");
  cone.rays.assign(rays.begin(), rays.end());
  return cone;
}

}  // namespace tropcorr
