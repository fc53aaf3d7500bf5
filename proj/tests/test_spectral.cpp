#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "support/util.hpp"
#include "tropcorr/polynomial.hpp"
#include "tropcorr/spectral.hpp"

using namespace tropcorr;
using tctest::code_of;
using tctest::q;

namespace {

Polynomial poly(std::vector<long> ascending) {
  std::vector<Rational> c;
  for (long x : ascending) c.emplace_back(x);
  return Polynomial(c);
}

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t n, bool nonnegative, int zero_odds) {
  std::uniform_int_distribution<long> num(nonnegative ? 0 : -6, 6), den(1, 4), zero(0, zero_odds);
  RationalMatrix m(n, RationalVector(n));
  for (auto& row : m) {
    for (auto& x : row) x = zero(rng) == 0 ? Rational(0) : make_rational(num(rng), den(rng));
  }
  return m;
}

void check_sandwich(const RationalMatrix& m, const EigenCertificate& cert, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> draw(1, 1000);
  for (int k = 0; k < 10; ++k) {
    RationalVector x(m.size());
    for (auto& v : x) v = draw(rng);
    const CollatzWielandt cw = collatz_wielandt(m, x);
    CHECK(compare_root(cert, cw.lower) >= 0);
    CHECK(compare_root(cert, cw.upper) <= 0);
  }
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("polynomial arithmetic") {
    const Polynomial p = poly({-1, -1, 1});
    CHECK(to_string(p) == "x^2 - x - 1");
    CHECK(p.degree() == 2);
    CHECK(Polynomial().degree() == -1);
    CHECK(p(Rational(2)) == 1);
    const DivMod dm = divmod(poly({-1, 0, 0, 1}), poly({-1, 1}));
    CHECK(dm.quotient == poly({1, 1, 1}));
    CHECK(dm.remainder.is_zero());
    CHECK(gcd(poly({1, -2, 1}), poly({-1, 1})) == poly({-1, 1}));
    CHECK(square_free_part(poly({-1, 3, -3, 1})) == poly({-1, 1}));
    CHECK(derivative(p) == poly({-1, 2}));
    const Polynomial inv = inverse_mod(poly({0, 1}), p);
    CHECK((inv * poly({0, 1})) % p == poly({1}));
    CHECK(integer_cleared(Polynomial({q("1/2"), q("-3/4"), Rational(1)})) ==
          std::vector<Integer>{2, -3, 4});
  }

  TEST_CASE("sturm counts and simplest fractions") {
    const SturmSequence s(poly({-1, -1, 1}));
    CHECK(s.count(-10, 10) == 2);
    CHECK(s.count(0, 2) == 1);
    CHECK(s.count(q("1618/1000"), 2) == 1);
    CHECK(s.count(q("1619/1000"), 2) == 0);
    CHECK(simplest_between(q("1/3"), q("2/3")) == q("1/2"));
    CHECK(simplest_between(q("7/5"), q("8/5")) == q("3/2"));
    CHECK(simplest_between(Rational(2), Rational(4)) == 3);
  }

  TEST_CASE("characteristic polynomials") {
    CHECK(charpoly({{Rational(2)}}) == poly({-2, 1}));
    CHECK(charpoly({{0, 2}, {q("1/2"), 0}}) == poly({-1, 0, 1}));
    CHECK(charpoly(identity_matrix(3)) == poly({-1, 3, -3, 1}));
    CHECK(code_of([] { charpoly({{1, 2}}); }) == Errc::NotSquare);
  }

  TEST_CASE("dominant eigenvalues") {
    const EigenCertificate two = dominant_eigenvalue({{Rational(2)}});
    CHECK(two.rational == std::optional<Rational>{2});
    CHECK(two.eigvec == RationalVector{1});
    CHECK(two.compare_to_one == 1);
    const EigenCertificate one = dominant_eigenvalue({{0, 2}, {q("1/2"), 0}});
    CHECK(one.rational == std::optional<Rational>{1});
    CHECK(one.eigvec == RationalVector{2, 1});
    CHECK(one.compare_to_one == 0);
    const EigenCertificate half = dominant_eigenvalue({{q("1/2")}});
    CHECK(half.rational == std::optional<Rational>{q("1/2")});
    CHECK(half.compare_to_one == -1);
    CHECK(code_of([] { dominant_eigenvalue({{1, -1}, {0, 1}}); }) == Errc::NegativeEntry);
    CHECK(code_of([] { dominant_eigenvalue({{1, 1}}); }) == Errc::NotSquare);
  }

  TEST_CASE("irrational eigenvalues are certified") {
    const RationalMatrix fib{{1, 1}, {1, 0}};
    const EigenCertificate c = dominant_eigenvalue(fib);
    CHECK_FALSE(c.rational.has_value());
    CHECK(c.factor == poly({-1, -1, 1}));
    CHECK(c.compare_to_one == 1);
    CHECK(c.approx == doctest::Approx(1.6180339887));
    CHECK(compare_root(c, q("1618/1000")) == 1);
    CHECK(compare_root(c, q("1619/1000")) == -1);
    for (const auto& e : c.eigvec_enclosure) CHECK(e.lo > 0);
    verify_certificate(fib, c);
    CHECK(code_of([&] { eigencone_basis(fib, c); }) == Errc::IrrationalEigenvalueUnsupported);
    EigenCertificate forged = c;
    forged.isolating = Interval{Rational(2), Rational(3)};
    CHECK(code_of([&] { verify_certificate(fib, forged); }) == Errc::Internal);
  }

  TEST_CASE("eigencones") {
    const auto one_by_one = eigencone_basis({{Rational(2)}}, dominant_eigenvalue({{Rational(2)}}));
    CHECK(one_by_one.rays == std::vector<RationalVector>{{1}});
    const RationalMatrix m{{0, 2}, {q("1/2"), 0}};
    CHECK(eigencone_basis(m, dominant_eigenvalue(m)).rays == std::vector<RationalVector>{{2, 1}});
    const RationalMatrix id = identity_matrix(2);
    const EigenCone orthant = eigencone_basis(id, dominant_eigenvalue(id));
    CHECK(orthant.dimension == 2);
    CHECK(orthant.rays == std::vector<RationalVector>{{1, 0}, {0, 1}});
  }

  TEST_CASE("property: charpoly agrees with cofactor expansion") {
    std::mt19937_64 rng(31);
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 40; ++trial) {
        const RationalMatrix m = random_matrix(rng, n, false, 3);
        CHECK(charpoly(m) == tctest::cofactor_charpoly(m));
      }
    }
  }

  TEST_CASE("property: certificates replay and sandwich on random nonnegative matrices") {
    std::mt19937_64 rng(32);
    std::size_t irrational = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 40; ++trial) {
        const RationalMatrix m = random_matrix(rng, n, true, 2);
        const EigenCertificate c = dominant_eigenvalue(m);
        verify_certificate(m, c);
        CHECK(c.charpoly == tctest::cofactor_charpoly(m));
        CHECK(c.compare_to_one == compare_root(c, Rational(1)));
        if (c.rational) {
          // exact residual and nonnegativity
          const RationalVector mv = multiply(m, c.eigvec);
          for (std::size_t i = 0; i < n; ++i) {
            CHECK(mv[i] == *c.rational * c.eigvec[i]);
            CHECK(c.eigvec[i] >= 0);
          }
          CHECK(c.charpoly(*c.rational) == 0);
        } else {
          ++irrational;
          for (const auto& e : c.eigvec_enclosure) CHECK(e.lo >= 0);
        }
        check_sandwich(m, c, rng);
      }
    }
    CHECK(irrational > 10);
  }
}
