#include "oracles/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>

using namespace tropcorr;

namespace tctest {

namespace {

std::vector<Mask> brute_splits(std::size_t n) {
  std::vector<Mask> out;
  const Mask last = bit(n - 1);
  for (Mask s = 0; s < bit(n); ++s) {
    if (s & last) continue;
    const int k = popcount(s);
    if (k >= 2 && static_cast<int>(n) - k >= 2) out.push_back(s);
  }
  return out;
}

bool crossing(Mask a, Mask b) { return (a & b) && (a & ~b) && (b & ~a); }

}  // namespace

std::uint64_t brute_split_count(std::size_t n) { return brute_splits(n).size(); }

std::vector<std::uint64_t> brute_tree_counts(std::size_t n, std::size_t max_k) {
  const auto splits = brute_splits(n);
  std::vector<std::uint64_t> counts(max_k + 1, 0);
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (k > splits.size()) break;
    std::vector<char> pick(splits.size(), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), 1);
    do {
      std::vector<Mask> chosen;
      for (std::size_t i = 0; i < splits.size(); ++i) {
        if (pick[i]) chosen.push_back(splits[i]);
      }
      bool ok = true;
      for (std::size_t i = 0; i < chosen.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < chosen.size() && ok; ++j) ok = !crossing(chosen[i], chosen[j]);
      }
      counts[k] += ok ? 1 : 0;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return counts;
}

ConePoint forget_by_distances(const ConePoint& point, const Marking& sub) {
  const ExplicitTree tree = to_explicit_tree(point.tree());
  const std::size_t V = tree.vertices.size();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(V);
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const Rational len = point.coords()[e];
    adj[tree.edges[e].parent].push_back({tree.edges[e].child, len});
    adj[tree.edges[e].child].push_back({tree.edges[e].parent, len});
  }
  const std::size_t m = sub.size();
  std::vector<std::size_t> at(m);
  for (std::size_t i = 0; i < m; ++i) at[i] = tree.leg_vertex[point.marking().index(sub.label(i))];
  std::vector<std::vector<Rational>> dist(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> d(V);
    std::vector<char> seen(V, 0);
    std::deque<std::size_t> queue{at[i]};
    seen[at[i]] = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (const auto& [w, len] : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        d[w] = d[v] + len;
        queue.push_back(w);
      }
    }
    for (std::size_t j = 0; j < m; ++j) dist[i][j] = d[at[j]];
  }
  std::map<Split, Rational> lengths;
  for (Mask side : brute_splits(m)) {
    std::vector<std::size_t> A, B;
    for (std::size_t i = 0; i < m; ++i) (side & bit(i) ? A : B).push_back(i);
    std::optional<Rational> best;
    for (auto a : A) {
      for (auto a2 : A) {
        for (auto b : B) {
          for (auto b2 : B) {
            const Rational s1 = dist[a][b] + dist[a2][b2];
            const Rational s2 = dist[a][b2] + dist[a2][b];
            const Rational v = (std::max(s1, s2) - dist[a][a2] - dist[b][b2]) / 2;
            if (!best || v < *best) best = v;
          }
        }
      }
    }
    if (*best > 0) lengths[Split{side}] = *best;
  }
  return make_curve(sub, lengths);
}

Polynomial cofactor_charpoly(const RationalMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Polynomial::constant(-m[i][j]);
      if (i == j) a[i][j] = a[i][j] + Polynomial::monomial(1, 1);
    }
  }
  std::function<Polynomial(std::vector<std::size_t>, std::size_t)> det = [&](std::vector<std::size_t> cols,
                                                                           std::size_t row) -> Polynomial {
    if (cols.empty()) return Polynomial::constant(1);
    Polynomial total;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      const Polynomial term = a[row][cols[k]] * det(rest, row + 1);
      total = (k % 2 == 0) ? total + term : total - term;
    }
    return total;
  };
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return det(cols, 0);
}

SparseEntries lifted_tlt_tilde(const MonodromyCover& cover, const StandardMulticurve& gamma) {
  const int d = cover.degree();
  const std::size_t n = cover.order().size();
  SparseEntries out;
  for (std::size_t b = 0; b < gamma.size(); ++b) {
    const BlockRange r = gamma.blocks()[b].range;
    auto inside = [&](std::size_t p) { return p >= r.first && p <= r.last; };

    // Pieces of the cut-open sphere: sheets glued by the generators on one side.
    auto pieces = [&](bool in) {
      std::vector<int> piece(static_cast<std::size_t>(d), -1);
      int count = 0;
      for (int s = 0; s < d; ++s) {
        if (piece[static_cast<std::size_t>(s)] >= 0) continue;
        std::deque<int> queue{s};
        piece[static_cast<std::size_t>(s)] = count;
        while (!queue.empty()) {
          const int x = queue.front();
          queue.pop_front();
          for (std::size_t p = 0; p < n; ++p) {
            if (inside(p) != in) continue;
            for (int y : {cover.perm(p)(x), cover.perm(p).inverse()(x)}) {
              if (piece[static_cast<std::size_t>(y)] < 0) {
                piece[static_cast<std::size_t>(y)] = count;
                queue.push_back(y);
              }
            }
          }
        }
        ++count;
      }
      return std::make_pair(piece, count);
    };
    const auto [inner, n_inner] = pieces(true);
    const auto [outer, n_outer] = pieces(false);

    // Lift the boundary loop: one pass crosses each enclosed generator in order.
    struct Lift {
      int start;
      int degree;
    };
    std::vector<Lift> lifts;
    std::vector<char> done(static_cast<std::size_t>(d), 0);
    for (int s = 0; s < d; ++s) {
      if (done[static_cast<std::size_t>(s)]) continue;
      int x = s, passes = 0;
      do {
        done[static_cast<std::size_t>(x)] = 1;
        for (std::size_t p = r.first; p <= r.last; ++p) x = cover.perm(p)(x);
        ++passes;
      } while (x != s);
      lifts.push_back({s, passes});
    }

    // Graph: inner pieces 0..n_inner-1, outer pieces after them, one edge per lift.
    const int nodes = n_inner + n_outer;
    std::vector<std::pair<int, int>> edges;
    for (const auto& l : lifts) {
      edges.push_back({inner[static_cast<std::size_t>(l.start)], n_inner + outer[static_cast<std::size_t>(l.start)]});
    }
    std::vector<int> node_of_point(cover.preimages().size());
    for (std::size_t q = 0; q < cover.preimages().size(); ++q) {
      const auto& pt = cover.preimages()[q];
      const int sheet = pt.cycle.front();
      node_of_point[q] = inside(pt.base) ? inner[static_cast<std::size_t>(sheet)]
                                         : n_inner + outer[static_cast<std::size_t>(sheet)];
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::vector<char> reach(static_cast<std::size_t>(nodes), 0);
      std::deque<int> queue{edges[e].first};
      reach[static_cast<std::size_t>(edges[e].first)] = 1;
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (std::size_t f = 0; f < edges.size(); ++f) {
          if (f == e) continue;
          for (auto [x, y] : {edges[f], std::make_pair(edges[f].second, edges[f].first)}) {
            if (x == v && !reach[static_cast<std::size_t>(y)]) {
              reach[static_cast<std::size_t>(y)] = 1;
              queue.push_back(y);
            }
          }
        }
      }
      Mask side = 0;
      for (std::size_t q = 0; q < node_of_point.size(); ++q) {
        if (reach[static_cast<std::size_t>(node_of_point[q])]) side |= bit(q);
      }
      const Split s = make_split(cover.preimage_marking(), side);
      out[{s.side, b}] += Rational(1, lifts[e].degree);
    }
  }
  return out;
}

SparseEntries sparse(const TltMatrix& m) {
  SparseEntries out;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    for (std::size_t j = 0; j < m.cols.size(); ++j) {
      if (m.entries[i][j] != 0) out[{m.rows[i].side, j}] = m.entries[i][j];
    }
  }
  return out;
}

}  // namespace tctest
