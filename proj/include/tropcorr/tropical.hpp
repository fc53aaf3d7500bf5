#pragma once

// Points of the tropical moduli space of genus-0 curves. A point lives in the
// closed cone of a marked tree; zero coordinates are faces and are removed
// on construction, so equal points compare equal whichever cone they were
// written in.

#include <map>
#include <span>
#include <vector>

#include "tropcorr/rational.hpp"
#include "tropcorr/trees.hpp"

namespace tropcorr {

class ConePoint {
 public:
  ConePoint() = default;

  const MarkedTree& tree() const { return tree_; }
  const Marking& marking() const { return tree_.marking(); }
  /// Aligned with tree().splits(); every entry is strictly positive.
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_cone_point() const { return tree_.is_cone_point(); }
  /// Length of split `s`, zero when the split is not an edge.
  Rational length(Split s) const;
  Rational total_length() const;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;

 private:
  friend ConePoint make_point(const MarkedTree&, std::span<const Rational>);

  MarkedTree tree_;
  std::vector<Rational> coords_;
};

/// Coordinates aligned with tree.splits(). Throws NegativeLength or KeyMismatch.
ConePoint make_point(const MarkedTree& tree, std::span<const Rational> coords);
/// Coordinates keyed by split; keys must be exactly tree.splits().
ConePoint make_point(const MarkedTree& tree, const std::map<Split, Rational>& coords);
/// Builds the tree from the keys of `lengths` (splits must be compatible).
ConePoint make_curve(const Marking& marking, const std::map<Split, Rational>& lengths);
ConePoint cone_point(const Marking& marking);

/// Tropical forgetful map: restrict every split to the sub-marking, drop
/// splits that become trivial, add lengths of splits that coincide.
ConePoint forget_trop(const ConePoint& point, const Marking& sub);
ConePoint forget_trop(const ConePoint& point, const Marking& target, std::span<const std::size_t> picks);

ConePoint scale(const ConePoint& point, const Rational& factor);

/// A point of the link: coordinates normalized to sum 1.
struct Ray {
  ConePoint direction;
  friend bool operator==(const Ray&, const Ray&) = default;
};

/// Throws ConePointHasNoRay for the cone point.
Ray ray_of(const ConePoint& point);

}  // namespace tropcorr
