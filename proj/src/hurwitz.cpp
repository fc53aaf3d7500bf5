#include "tropcorr/hurwitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tropcorr/errors.hpp"

namespace tropcorr {

LegData leg_data(const MonodromyCover& cover, const DynamicalPortrait& portrait) {
  LegData legs;
  legs.order = cover.order();
  legs.preimage_marking = cover.preimage_marking();
  legs.leg_map = cover.leg_map();
  for (const auto& q : cover.preimages()) legs.leg_degree.push_back(q.local_degree);
  legs.iota = portrait.iota;
  legs.degree = cover.degree();
  return legs;
}

namespace {

std::vector<std::vector<std::size_t>> incidence(const CombinatorialType& type) {
  std::vector<std::vector<std::size_t>> inc(type.vertices.size());
  for (std::size_t i = 0; i < type.edges.size(); ++i) {
    inc.at(type.edges[i].inner).push_back(i);
    inc.at(type.edges[i].outer).push_back(i);
  }
  return inc;
}

std::vector<std::vector<std::size_t>> legs_at(const CombinatorialType& type) {
  std::vector<std::vector<std::size_t>> at(type.vertices.size());
  for (std::size_t q = 0; q < type.leg_vertex.size(); ++q) at.at(type.leg_vertex[q]).push_back(q);
  return at;
}

}  // namespace

std::vector<Mask> upstairs_sides(const CombinatorialType& type) {
  const auto inc = incidence(type);
  const auto at = legs_at(type);
  const Marking& marks = type.legs.preimage_marking;
  std::vector<Mask> sides;
  for (std::size_t cut = 0; cut < type.edges.size(); ++cut) {
    std::vector<char> seen(type.vertices.size(), 0);
    std::vector<std::size_t> stack{type.edges[cut].inner};
    seen[type.edges[cut].inner] = 1;
    Mask side = 0;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t q : at[v]) side |= bit(q);
      for (std::size_t i : inc[v]) {
        if (i == cut) continue;
        const std::size_t w = type.edges[i].inner == v ? type.edges[i].outer : type.edges[i].inner;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (side & marks.last_bit()) side = marks.full() & ~side;
    sides.push_back(side);
  }
  return sides;
}

MarkedTree upstairs_tree(const CombinatorialType& type) {
  return validate_split_system(type.legs.preimage_marking, upstairs_sides(type));
}

TypeKey type_key(const CombinatorialType& type) {
  TypeKey key;
  key.t1 = type.t1.splits();
  const auto sides = upstairs_sides(type);
  for (std::size_t i = 0; i < type.edges.size(); ++i) {
    key.edges.emplace_back(sides[i], type.t1.splits().at(type.edges[i].image).side, type.edges[i].degree);
  }
  std::sort(key.edges.begin(), key.edges.end());
  return key;
}

CombinatorialType build_type(const PullbackResult& pb) {
  CombinatorialType type;
  type.legs = leg_data(pb.cover, pb.portrait);
  type.t1 = pb.gamma.dual_tree();
  type.leg_vertex.resize(pb.cover.preimages().size());
  for (std::size_t v = 0; v < pb.vertices.size(); ++v) {
    type.vertices.push_back(TypeVertex{pb.vertices[v].region, static_cast<int>(pb.vertices[v].sheets.size())});
    for (std::size_t q : pb.vertices[v].legs) type.leg_vertex[q] = v;
  }
  for (const auto& e : pb.edges) type.edges.push_back(TypeEdge{e.inner, e.outer, e.block, e.degree});
  validate_type(type);
  return type;
}

CombinatorialType build_type(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                             const StandardMulticurve& gamma) {
  return build_type(pullback_tree(cover, portrait, gamma));
}

const CombinatorialType& validate_type(const CombinatorialType& type) {
  const LegData& L = type.legs;
  const std::size_t legs = L.preimage_marking.size();
  if (L.leg_map.size() != legs || L.leg_degree.size() != legs || type.leg_vertex.size() != legs ||
      L.iota.size() != L.order.size() || !(type.t1.marking() == L.order)) {
    throw Error(Errc::KeyMismatch, "leg data does not match the markings");
  }
  for (std::size_t q = 0; q < legs; ++q) {
    if (L.leg_map[q] >= L.order.size()) throw Error(Errc::KeyMismatch, "leg map out of range");
  }
  const std::size_t nv = type.vertices.size();

  // Tree.
  for (const auto& e : type.edges) {
    if (e.inner >= nv || e.outer >= nv) throw Error(Errc::UnstableTree, "edge endpoint out of range");
  }
  for (std::size_t q = 0; q < legs; ++q) {
    if (type.leg_vertex[q] >= nv) throw Error(Errc::UnstableTree, "leg attached to a missing vertex");
  }
  if (nv == 0 || type.edges.size() + 1 != nv) throw Error(Errc::UnstableTree, "T2 does not have |V| - 1 edges");
  const auto inc = incidence(type);
  const auto at = legs_at(type);
  {
    std::vector<char> seen(nv, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t i : inc[v]) {
        const std::size_t w = type.edges[i].inner == v ? type.edges[i].outer : type.edges[i].inner;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    if (reached != nv) throw Error(Errc::UnstableTree, "T2 is not connected");
  }

  // Stability.
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t val = inc[v].size() + at[v].size();
    if (val < 3) throw Error(Errc::UnstableTree, "T2 vertex " + std::to_string(v) + " has valence " + std::to_string(val));
  }

  // Homomorphism.
  const ExplicitTree down = to_explicit_tree(type.t1);
  for (std::size_t v = 0; v < nv; ++v) {
    if (type.vertices[v].image >= down.vertices.size()) {
      throw Error(Errc::NotHomomorphism, "T2 vertex " + std::to_string(v) + " maps outside T1");
    }
  }
  for (std::size_t i = 0; i < type.edges.size(); ++i) {
    const auto& e = type.edges[i];
    if (e.image >= down.edges.size()) throw Error(Errc::NotHomomorphism, "T2 edge " + std::to_string(i) + " maps outside T1");
    const std::size_t a = type.vertices[e.inner].image, b = type.vertices[e.outer].image;
    const auto& t = down.edges[e.image];
    if (!((a == t.child && b == t.parent) || (a == t.parent && b == t.child))) {
      throw Error(Errc::NotHomomorphism, "T2 edge " + std::to_string(i) + " does not map onto its image edge");
    }
  }
  for (std::size_t q = 0; q < legs; ++q) {
    if (type.vertices[type.leg_vertex[q]].image != down.leg_vertex[L.leg_map[q]]) {
      throw Error(Errc::NotHomomorphism, "leg " + L.preimage_marking.label(q) + " does not map onto its image leg");
    }
  }

  // Balancing.
  auto balance_error = [&](std::size_t v, const std::string& where) {
    return Error(Errc::BalancingFailure, "vertex " + std::to_string(v) + ", " + where);
  };
  for (std::size_t v = 0; v < nv; ++v) {
    const int k = type.vertices[v].degree;
    if (k < 1) throw balance_error(v, "nonpositive degree");
    const auto& w = down.vertices[type.vertices[v].image];
    for (std::size_t j : w.edges) {
      int sum = 0;
      for (std::size_t i : inc[v]) {
        if (type.edges[i].image == j) sum += type.edges[i].degree;
      }
      if (sum != k) {
        throw balance_error(v, "edge {" + split_key(L.order, type.t1.splits()[j]) + "}: degrees sum to " +
                                   std::to_string(sum) + ", vertex degree " + std::to_string(k));
      }
    }
    for (std::size_t p : w.legs) {
      int sum = 0;
      for (std::size_t q : at[v]) {
        if (L.leg_map[q] == p) sum += L.leg_degree[q];
      }
      if (sum != k) throw balance_error(v, "leg " + L.order.label(p) + ": degrees sum to " + std::to_string(sum));
    }
  }
  std::vector<int> fiber(down.vertices.size(), 0);
  for (const auto& v : type.vertices) fiber[v.image] += v.degree;
  for (std::size_t w = 0; w < fiber.size(); ++w) {
    if (fiber[w] != L.degree) {
      throw Error(Errc::BalancingFailure, "fiber over T1 vertex " + std::to_string(w) + " has degree " +
                                              std::to_string(fiber[w]) + ", expected " + std::to_string(L.degree));
    }
  }
  for (const auto& e : type.edges) {
    if (e.degree < 1) throw Error(Errc::BalancingFailure, "nonpositive edge degree");
  }

  // Local Riemann-Hurwitz.
  for (std::size_t v = 0; v < nv; ++v) {
    const long flags = static_cast<long>(inc[v].size() + at[v].size());
    const long k = type.vertices[v].degree;
    const long m = static_cast<long>(down.vertices[type.vertices[v].image].valence);
    if (flags != k * (m - 2) + 2) {
      throw Error(Errc::LocalRHFailure, "vertex " + std::to_string(v) + " has " + std::to_string(flags) +
                                            " flags, expected " + std::to_string(k * (m - 2) + 2));
    }
  }
  return type;
}

CombinatorialType contract_type(const CombinatorialType& type, std::span<const Split> edges) {
  std::vector<char> gone(type.t1.edge_count(), 0);
  for (Split s : edges) {
    auto i = type.t1.index_of(s);
    if (!i) throw Error(Errc::UnknownEdge, "{" + split_key(type.t1.marking(), s) + "} is not an edge of T1");
    gone[*i] = 1;
  }
  const MarkedTree t1 = contract(type.t1, edges);
  const ExplicitTree down = to_explicit_tree(type.t1);
  auto new_vertex = [&](std::size_t w) {
    while (w != 0 && gone[w - 1]) w = down.edges[w - 1].parent;
    return w == 0 ? std::size_t{0} : *t1.index_of(type.t1.splits()[w - 1]) + 1;
  };

  const std::size_t nv = type.vertices.size();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : type.edges) {
    if (gone[e.image]) parent[std::max(find(e.inner), find(e.outer))] = std::min(find(e.inner), find(e.outer));
  }
  // Sheets of a merged group: vertex degrees minus the contracted edges' overlaps.
  std::map<std::size_t, long> degree;
  for (std::size_t v = 0; v < nv; ++v) degree[find(v)] += type.vertices[v].degree;
  for (const auto& e : type.edges) {
    if (gone[e.image]) degree[find(e.inner)] -= e.degree;
  }
  std::map<std::size_t, std::size_t> index;
  CombinatorialType out;
  out.legs = type.legs;
  out.t1 = t1;
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t root = find(v);
    if (index.count(root)) continue;
    index[root] = out.vertices.size();
    out.vertices.push_back(TypeVertex{new_vertex(type.vertices[v].image), static_cast<int>(degree[root])});
  }
  for (const auto& e : type.edges) {
    if (gone[e.image]) continue;
    out.edges.push_back(TypeEdge{index[find(e.inner)], index[find(e.outer)],
                                 *t1.index_of(type.t1.splits()[e.image]), e.degree});
  }
  for (std::size_t v : type.leg_vertex) out.leg_vertex.push_back(index[find(v)]);
  validate_type(out);
  return out;
}

std::vector<long> lcmdeg(const CombinatorialType& type) {
  std::vector<long> out(type.t1.edge_count(), 1);
  for (const auto& e : type.edges) out[e.image] = std::lcm(out[e.image], static_cast<long>(e.degree));
  return out;
}

HurwitzConePoint make_hurwitz_point(CombinatorialType type, std::vector<Rational> coords) {
  if (coords.size() != type.t1.edge_count()) {
    throw Error(Errc::KeyMismatch, "expected " + std::to_string(type.t1.edge_count()) + " cone coordinates");
  }
  for (const auto& c : coords) {
    if (sgn(c) < 0) throw Error(Errc::NegativeLength, "negative cone coordinate");
  }
  return HurwitzConePoint{std::move(type), std::move(coords)};
}

ConePoint pi1_trop(const HurwitzConePoint& point) {
  const auto l = lcmdeg(point.type);
  std::vector<Rational> lengths;
  for (std::size_t i = 0; i < l.size(); ++i) lengths.push_back(point.coords[i] * l[i]);
  return make_point(point.type.t1, lengths);
}

ConePoint pi2_tilde_trop(const HurwitzConePoint& point) {
  const auto l = lcmdeg(point.type);
  const auto sides = upstairs_sides(point.type);
  std::map<Split, Rational> lengths;
  for (std::size_t i = 0; i < point.type.edges.size(); ++i) {
    const auto& e = point.type.edges[i];
    lengths[make_split(point.type.legs.preimage_marking, sides[i])] += point.coords[e.image] * make_rational(l[e.image], e.degree);
  }
  return make_curve(point.type.legs.preimage_marking, lengths);
}

ConePoint pi2_trop(const HurwitzConePoint& point) {
  return forget_trop(pi2_tilde_trop(point), point.type.legs.order, point.type.legs.iota);
}

HurwitzConePoint nu_trop(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                         const WeightedMulticurve& weighted) {
  CombinatorialType type = build_type(cover, portrait, weighted.curve);
  const auto l = lcmdeg(type);
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < l.size(); ++i) coords.push_back(weighted.weights.at(i) / l[i]);
  return make_hurwitz_point(std::move(type), std::move(coords));
}

TltMatrix branch_matrix(const CombinatorialType& type) {
  const std::size_t cols = type.t1.edge_count();
  const auto l = lcmdeg(type);
  std::map<Split, RationalVector> composed;
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<Rational> unit(cols);
    unit[j] = Rational(1, l[j]);
    const ConePoint image = pi2_trop(make_hurwitz_point(type, unit));
    for (std::size_t r = 0; r < image.tree().edge_count(); ++r) {
      composed.try_emplace(image.tree().splits()[r], RationalVector(cols)).first->second[j] = image.coords()[r];
    }
  }
  std::map<Split, RationalVector> direct;
  const auto sides = upstairs_sides(type);
  for (std::size_t i = 0; i < type.edges.size(); ++i) {
    auto s = try_make_split(type.legs.order, restrict_side(sides[i], type.legs.iota));
    if (!s) continue;
    direct.try_emplace(*s, RationalVector(cols)).first->second[type.edges[i].image] += Rational(1, type.edges[i].degree);
  }
  if (composed != direct) throw Error(Errc::Internal, "branch matrix differs from the sum of 1/edgedeg");
  TltMatrix m;
  m.row_marking = type.legs.order;
  m.col_marking = type.legs.order;
  m.cols = type.t1.splits();
  for (auto& [s, row] : composed) {
    m.rows.push_back(s);
    m.entries.push_back(std::move(row));
  }
  return m;
}

bool is_weakly_fixed(const CombinatorialType& type) {
  const MarkedTree pushed = forget_pushforward(upstairs_tree(type), type.legs.order, type.legs.iota);
  return is_contraction_of(pushed, type.t1);
}

FixedConeReport fixed_cone_report(const CombinatorialType& type, std::optional<StandardMulticurve> gamma) {
  FixedConeReport report;
  report.type = type;
  report.gamma = std::move(gamma);
  report.disclaimer = kNaiveDisclaimer;
  report.weakly_fixed = is_weakly_fixed(type);
  const TltMatrix branch = branch_matrix(type);
  auto square = square_up(branch, type.t1);
  if (square.has_value() != report.weakly_fixed) {
    throw Error(Errc::Internal, "weak fixedness disagrees with the branch matrix support");
  }
  report.branch = square ? *square : branch;
  if (!report.weakly_fixed || type.t1.is_cone_point()) return report;

  const RationalMatrix& m = report.branch.entries;
  report.eigen = dominant_eigenvalue(m);
  verify_certificate(m, *report.eigen);
  if (report.eigen->rational) {
    report.eigencone = eigencone_basis(m, *report.eigen);
    for (const auto& ray : report.eigencone->rays) {
      const RationalVector image = multiply(m, ray);
      for (std::size_t i = 0; i < ray.size(); ++i) {
        if (image[i] != *report.eigen->rational * ray[i]) throw Error(Errc::Internal, "fixed ray is not an eigenvector");
      }
      report.fixed_rays.push_back(ray_of(make_point(type.t1, ray)));
    }
  }
  report.obstruction = report.eigen->compare_to_one >= 0;
  return report;
}

}  // namespace tropcorr
