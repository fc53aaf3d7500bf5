#include "tropcorr/tropical.hpp"

#include "tropcorr/errors.hpp"

namespace tropcorr {

Rational ConePoint::length(Split s) const {
  if (auto i = tree_.index_of(s)) return coords_[*i];
  return 0;
}

Rational ConePoint::total_length() const {
  Rational sum = 0;
  for (const auto& c : coords_) sum += c;
  return sum;
}

ConePoint make_point(const MarkedTree& tree, std::span<const Rational> coords) {
  if (coords.size() != tree.edge_count()) {
    throw Error(Errc::KeyMismatch, "expected " + std::to_string(tree.edge_count()) + " coordinates, got " +
                                       std::to_string(coords.size()));
  }
  std::vector<Mask> kept;
  std::vector<Rational> values;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (sgn(coords[i]) < 0) {
      throw Error(Errc::NegativeLength,
                  "negative coordinate on {" + split_key(tree.marking(), tree.splits()[i]) + "}");
    }
    if (sgn(coords[i]) > 0) {
      kept.push_back(tree.splits()[i].side);
      values.push_back(coords[i]);
    }
  }
  ConePoint p;
  // Splits stay sorted after dropping entries, so `values` stays aligned.
  p.tree_ = validate_split_system(tree.marking(), std::move(kept));
  p.coords_ = std::move(values);
  return p;
}

ConePoint make_point(const MarkedTree& tree, const std::map<Split, Rational>& coords) {
  std::vector<Rational> aligned;
  aligned.reserve(tree.edge_count());
  for (Split s : tree.splits()) {
    auto it = coords.find(s);
    if (it == coords.end()) {
      throw Error(Errc::KeyMismatch, "missing coordinate for {" + split_key(tree.marking(), s) + "}");
    }
    aligned.push_back(it->second);
  }
  if (coords.size() != tree.edge_count()) {
    throw Error(Errc::KeyMismatch, "coordinates given for splits that are not edges of the tree");
  }
  return make_point(tree, aligned);
}

ConePoint make_curve(const Marking& marking, const std::map<Split, Rational>& lengths) {
  std::vector<Mask> sides;
  for (const auto& [s, _] : lengths) sides.push_back(s.side);
  return make_point(validate_split_system(marking, std::move(sides)), lengths);
}

ConePoint cone_point(const Marking& marking) {
  return make_point(one_vertex_tree(marking), std::span<const Rational>{});
}

ConePoint forget_trop(const ConePoint& point, const Marking& target, std::span<const std::size_t> picks) {
  if (picks.size() != target.size() || target.size() < 3) {
    throw Error(Errc::BadSubmarking, "sub-marking must have at least three labels");
  }
  std::map<Split, Rational> merged;
  const auto& splits = point.tree().splits();
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (auto r = try_make_split(target, restrict_side(splits[i].side, picks))) merged[*r] += point.coords()[i];
  }
  return make_curve(target, merged);
}

ConePoint forget_trop(const ConePoint& point, const Marking& sub) {
  const auto picks = submarking_picks(point.marking(), sub);
  return forget_trop(point, sub, picks);
}

ConePoint scale(const ConePoint& point, const Rational& factor) {
  std::vector<Rational> c = point.coords();
  for (auto& x : c) x *= factor;
  return make_point(point.tree(), c);
}

Ray ray_of(const ConePoint& point) {
  if (point.is_cone_point()) throw Error(Errc::ConePointHasNoRay, "the cone point spans no ray");
  return Ray{scale(point, 1 / point.total_length())};
}

}  // namespace tropcorr
