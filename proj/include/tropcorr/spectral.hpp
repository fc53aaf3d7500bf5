#pragma once

// Exact spectral data of small nonnegative rational matrices: characteristic
// polynomial, a certified dominant eigenvalue and a nonnegative eigenvector.

#include <optional>
#include <span>
#include <vector>

#include "tropcorr/polynomial.hpp"
#include "tropcorr/rational.hpp"

namespace tropcorr {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

RationalMatrix identity_matrix(std::size_t n);
RationalVector multiply(const RationalMatrix& m, std::span<const Rational> v);
/// Throws NotSquare (an empty matrix counts as square).
std::size_t square_dimension(const RationalMatrix& m);

/// Monic characteristic polynomial det(xI - M), by Faddeev-LeVerrier.
Polynomial charpoly(const RationalMatrix& m);

/// Basis of the kernel from the reduced row echelon form; one vector per
/// free column, with a 1 in that column.
std::vector<RationalVector> nullspace(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

struct EigenCertificate {
  Polynomial charpoly;
  /// Square-free factor of the characteristic polynomial having lambda as a root.
  Polynomial factor;
  /// (lo, hi] contains lambda and no other real root of the characteristic polynomial.
  Interval isolating;
  std::optional<Rational> rational;
  /// Rational case: exact eigenvector, a primitive integer vector.
  RationalVector eigvec;
  /// Irrational case: entries as polynomials in lambda reduced modulo `factor`,
  /// and enclosures of their values over the isolating interval.
  std::vector<Polynomial> eigvec_poly;
  std::vector<Interval> eigvec_enclosure;
  /// sign(lambda - 1), decided exactly.
  int compare_to_one = 0;
  double approx = 0;
};

/// Spectral radius of a nonnegative square matrix. Throws NotSquare or NegativeEntry.
EigenCertificate dominant_eigenvalue(const RationalMatrix& m);

/// Replays every claim of the certificate; throws Internal on the first failure.
void verify_certificate(const RationalMatrix& m, const EigenCertificate& cert);

/// sign(lambda - r), exact.
int compare_root(const EigenCertificate& cert, const Rational& r);

struct CollatzWielandt {
  Rational lower;
  Rational upper;
};
/// min and max of (Mx)_i / x_i for a strictly positive probe x.
CollatzWielandt collatz_wielandt(const RationalMatrix& m, std::span<const Rational> probe);

/// Nonnegative part of the lambda-eigenspace.
struct EigenCone {
  std::vector<RationalVector> basis;
  /// Extreme rays, each a primitive integer vector, sorted.
  std::vector<RationalVector> rays;
  std::size_t dimension = 0;
};

/// Throws IrrationalEigenvalueUnsupported when lambda is irrational.
EigenCone eigencone_basis(const RationalMatrix& m, const EigenCertificate& cert);

/// Scales a nonzero rational vector to a primitive integer vector with the
/// sign of its first nonzero entry kept.
RationalVector primitive_integer(RationalVector v);

}  // namespace tropcorr
