#include "tropcorr/pullback.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "tropcorr/errors.hpp"

namespace tropcorr {

StandardMulticurve validate_multicurve(const Marking& order, std::span<const Mask> blocks) {
  std::map<Split, BlockRange> canonical;
  for (Mask m : blocks) {
    const BlockRange range = canonical_block(order, m);
    const Mask side = (bit(range.last + 1) - 1) & ~(bit(range.first) - 1);
    canonical.emplace(Split{side}, range);
  }
  StandardMulticurve gamma;
  gamma.order_ = order;
  std::vector<Mask> sides;
  for (const auto& [split, range] : canonical) {
    for (const auto& other : gamma.blocks_) {
      if (!compatible(split, other.split)) {
        throw Error(Errc::NotLaminar, "blocks {" + split_key(order, other.split) + "} and {" +
                                          split_key(order, split) + "} overlap without nesting");
      }
    }
    gamma.blocks_.push_back(Block{range, split});
    sides.push_back(split.side);
  }
  gamma.tree_ = validate_split_system(order, std::move(sides));
  return gamma;
}

WeightedMulticurve make_weighted(StandardMulticurve curve, std::vector<Rational> weights) {
  if (weights.size() != curve.size()) {
    throw Error(Errc::KeyMismatch, "expected " + std::to_string(curve.size()) + " weights, got " +
                                       std::to_string(weights.size()));
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (sgn(weights[i]) < 0) {
      throw Error(Errc::NegativeLength,
                  "negative weight on {" + split_key(curve.order(), curve.blocks()[i].split) + "}");
    }
  }
  return WeightedMulticurve{std::move(curve), std::move(weights)};
}

std::vector<StandardMulticurve> enumerate_standard_multicurves(const Marking& order, std::size_t max_blocks) {
  const std::size_t n = order.size();
  std::vector<Mask> intervals;
  for (std::size_t first = 0; first + 1 < n; ++first) {
    for (std::size_t last = first + 1; last + 1 < n; ++last) {
      const std::size_t size = last - first + 1;
      if (size + 2 > n) continue;
      intervals.push_back((bit(last + 1) - 1) & ~(bit(first) - 1));
    }
  }
  std::sort(intervals.begin(), intervals.end());
  std::vector<StandardMulticurve> out;
  std::vector<Mask> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t next) {
    out.push_back(validate_multicurve(order, chosen));
    if (chosen.size() == max_blocks) return;
    for (std::size_t i = next; i < intervals.size(); ++i) {
      bool ok = true;
      for (Mask c : chosen) ok = ok && compatible(Split{c}, Split{intervals[i]});
      if (!ok) continue;
      chosen.push_back(intervals[i]);
      extend(i + 1);
      chosen.pop_back();
    }
  };
  extend(0);
  std::stable_sort(out.begin(), out.end(), [](const StandardMulticurve& a, const StandardMulticurve& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.dual_tree().splits() < b.dual_tree().splits();
  });
  return out;
}

namespace {

[[noreturn]] void broken(const std::string& what) { throw Error(Errc::Internal, "pullback invariant: " + what); }

}  // namespace

PullbackResult pullback_tree(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                             const StandardMulticurve& gamma) {
  if (!(gamma.order() == cover.order())) throw Error(Errc::MarkingMismatch, "multicurve and cover use different orders");
  PullbackResult res;
  res.cover = cover;
  res.portrait = portrait;
  res.gamma = gamma;
  res.downstairs = to_explicit_tree(gamma.dual_tree());
  const ExplicitTree& down = res.downstairs;
  const int d = cover.degree();

  std::vector<Perm> block_perm;
  for (const auto& b : gamma.blocks()) block_perm.push_back(curve_monodromy(cover, b.split.side));

  // Upstairs vertices: orbits of each region's group.
  std::vector<std::vector<std::size_t>> vertex_of(down.vertices.size(), std::vector<std::size_t>(static_cast<std::size_t>(d)));
  for (std::size_t r = 0; r < down.vertices.size(); ++r) {
    std::vector<Perm> gens;
    for (std::size_t p : down.vertices[r].legs) gens.push_back(cover.perm(p));
    for (std::size_t e : down.vertices[r].edges) {
      if (down.edges[e].parent == r) gens.push_back(block_perm[e]);
    }
    for (auto& orbit : orbits(d, gens)) {
      for (int s : orbit) vertex_of[r][static_cast<std::size_t>(s)] = res.vertices.size();
      res.vertices.push_back(UpstairsVertex{r, std::move(orbit), {}});
    }
  }
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    for (auto cycle : block_perm[j].cycles()) {
      std::sort(cycle.begin(), cycle.end());
      UpstairsEdge e;
      e.block = j;
      e.degree = static_cast<int>(cycle.size());
      e.inner = vertex_of[down.edges[j].child][static_cast<std::size_t>(cycle.front())];
      e.outer = vertex_of[down.edges[j].parent][static_cast<std::size_t>(cycle.front())];
      e.cycle = std::move(cycle);
      res.edges.push_back(std::move(e));
    }
  }
  for (std::size_t q = 0; q < cover.preimages().size(); ++q) {
    const auto& pt = cover.preimages()[q];
    const std::size_t r = down.leg_vertex[pt.base];
    res.vertices[vertex_of[r][static_cast<std::size_t>(pt.cycle.front())]].legs.push_back(q);
  }

  const std::size_t nv = res.vertices.size();
  if (res.edges.size() + 1 != nv) broken("edge count is not |V| - 1");
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t i = 0; i < res.edges.size(); ++i) {
    incident[res.edges[i].inner].push_back(i);
    incident[res.edges[i].outer].push_back(i);
  }
  // Legs reachable from `start` without crossing edge `cut`.
  auto legs_from = [&](std::size_t start, std::size_t cut) {
    std::vector<char> seen(nv, 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    Mask side = 0;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t q : res.vertices[v].legs) side |= bit(q);
      for (std::size_t i : incident[v]) {
        if (i == cut) continue;
        const std::size_t w = res.edges[i].inner == v ? res.edges[i].outer : res.edges[i].inner;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return std::pair{side, reached};
  };
  if (nv > 0 && legs_from(0, res.edges.size()).second != nv) broken("upstairs graph is disconnected");

  for (std::size_t v = 0; v < nv; ++v) {
    const auto& vx = res.vertices[v];
    const std::size_t flags = vx.legs.size() + incident[v].size();
    if (flags < 3) broken("upstairs vertex of valence " + std::to_string(flags));
    const std::size_t k = vx.sheets.size();
    const std::size_t m = down.vertices[vx.region].valence;
    if (flags != k * (m - 2) + 2) broken("flag count differs from k(m-2)+2");
    // Balancing over every downstairs edge at the region.
    for (std::size_t e : down.vertices[vx.region].edges) {
      std::size_t sum = 0;
      for (std::size_t i : incident[v]) {
        if (res.edges[i].block == e) sum += static_cast<std::size_t>(res.edges[i].degree);
      }
      if (sum != k) broken("edge degrees do not sum to the vertex degree");
    }
  }

  std::vector<Mask> sides;
  for (auto& e : res.edges) {
    const Mask side = legs_from(e.inner, static_cast<std::size_t>(&e - res.edges.data())).first;
    auto split = try_make_split(cover.preimage_marking(), side);
    if (!split) broken("upstairs edge is peripheral");
    e.split = *split;
    sides.push_back(side);
  }
  res.upstairs_tree = validate_split_system(cover.preimage_marking(), std::move(sides));
  if (res.upstairs_tree.edge_count() != res.edges.size()) broken("two upstairs edges share a split");
  return res;
}

std::optional<std::size_t> TltMatrix::row_of(Split s) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), s);
  if (it == rows.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - rows.begin());
}

namespace {

TltMatrix from_rows(const Marking& row_marking, const StandardMulticurve& gamma,
                    const std::map<Split, RationalVector>& rows) {
  TltMatrix m;
  m.row_marking = row_marking;
  m.col_marking = gamma.order();
  m.cols = gamma.dual_tree().splits();
  for (const auto& [s, values] : rows) {
    m.rows.push_back(s);
    m.entries.push_back(values);
  }
  return m;
}

}  // namespace

TltMatrix tlt_tilde_matrix(const PullbackResult& result) {
  std::map<Split, RationalVector> rows;
  for (const auto& e : result.edges) {
    auto& row = rows.try_emplace(e.split, RationalVector(result.gamma.size())).first->second;
    row[e.block] += Rational(1, e.degree);
  }
  return from_rows(result.cover.preimage_marking(), result.gamma, rows);
}

TltMatrix push_to_marking(const TltMatrix& tilde, const MonodromyCover& cover, const DynamicalPortrait& portrait) {
  std::map<Split, RationalVector> rows;
  for (std::size_t i = 0; i < tilde.rows.size(); ++i) {
    auto s = try_make_split(cover.order(), restrict_side(tilde.rows[i].side, portrait.iota));
    if (!s) continue;
    auto& row = rows.try_emplace(*s, RationalVector(tilde.cols.size())).first->second;
    for (std::size_t j = 0; j < tilde.cols.size(); ++j) row[j] += tilde.entries[i][j];
  }
  TltMatrix m;
  m.row_marking = cover.order();
  m.col_marking = tilde.col_marking;
  m.cols = tilde.cols;
  for (auto& [s, values] : rows) {
    m.rows.push_back(s);
    m.entries.push_back(std::move(values));
  }
  return m;
}

TltMatrix tlt_matrix(const PullbackResult& result) {
  std::map<Split, RationalVector> rows;
  for (const auto& e : result.edges) {
    auto s = try_make_split(result.cover.order(), restrict_side(e.split.side, result.portrait.iota));
    if (!s) continue;
    auto& row = rows.try_emplace(*s, RationalVector(result.gamma.size())).first->second;
    row[e.block] += Rational(1, e.degree);
  }
  TltMatrix direct = from_rows(result.cover.order(), result.gamma, rows);
  if (!(direct == push_to_marking(tlt_tilde_matrix(result), result.cover, result.portrait))) {
    broken("TLT differs from the pushforward of the preimage-level TLT");
  }
  return direct;
}

std::vector<Split> phi_star(const PullbackResult& result) { return tlt_matrix(result).rows; }

std::optional<TltMatrix> square_up(const TltMatrix& m, const MarkedTree& targets) {
  TltMatrix sq;
  sq.row_marking = targets.marking();
  sq.rows = targets.splits();
  sq.col_marking = m.col_marking;
  sq.cols = m.cols;
  sq.entries.assign(sq.rows.size(), RationalVector(m.cols.size()));
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    auto t = targets.index_of(m.rows[i]);
    if (!t) return std::nullopt;
    sq.entries[*t] = m.entries[i];
  }
  return sq;
}

StabilityResult stability_and_eigenvalue(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                         const StandardMulticurve& gamma) {
  const PullbackResult pb = pullback_tree(cover, portrait, gamma);
  const TltMatrix tlt = tlt_matrix(pb);
  StabilityResult out;
  out.image = tlt.rows;
  out.matrix = square_up(tlt, gamma.dual_tree());
  out.stable = out.matrix.has_value();
  if (out.stable && !gamma.empty()) {
    out.eigen = dominant_eigenvalue(out.matrix->entries);
    out.obstruction = out.eigen->compare_to_one >= 0;
  }
  return out;
}

}  // namespace tropcorr
