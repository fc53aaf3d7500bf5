// Brute-force enumeration of combinatorial types with a given leg profile.
//
// Over each vertex w of T1 we enumerate permutation tuples, one per flag at
// w (legs first, then edges), with product id, leg flags of the prescribed
// cycle type, and every orbit of genus 0. Only the shape of a tuple matters
// downstream: per orbit its size and the cycle lengths at each flag. Shapes
// over all vertices are then glued: leg cycles receive preimage points of
// the same degree, edge cycles over a T1 edge are matched across its two
// ends by degree, and the glued graph must be a tree.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "tropcorr/errors.hpp"
#include "tropcorr/hurwitz.hpp"

namespace tropcorr {

namespace {

struct LocalVertex {
  int degree = 0;
  std::vector<std::vector<int>> flag_cycles;  // per flag, sorted cycle lengths
  friend auto operator<=>(const LocalVertex&, const LocalVertex&) = default;
};
using LocalSolution = std::vector<LocalVertex>;

std::vector<Perm> symmetric_group(int d) {
  std::vector<int> images(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) images[static_cast<std::size_t>(i)] = i;
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

std::optional<LocalSolution> shape_of(int d, const std::vector<Perm>& tuple) {
  const long m = static_cast<long>(tuple.size());
  LocalSolution sol;
  for (const auto& orbit : orbits(d, tuple)) {
    const std::set<int> members(orbit.begin(), orbit.end());
    LocalVertex v;
    v.degree = static_cast<int>(orbit.size());
    long flags = 0;
    for (const auto& t : tuple) {
      std::vector<int> lengths;
      for (const auto& c : t.cycles()) {
        if (members.count(c.front())) lengths.push_back(static_cast<int>(c.size()));
      }
      std::sort(lengths.begin(), lengths.end());
      flags += static_cast<long>(lengths.size());
      v.flag_cycles.push_back(std::move(lengths));
    }
    if (flags != v.degree * (m - 2) + 2) return std::nullopt;
    sol.push_back(std::move(v));
  }
  std::sort(sol.begin(), sol.end());
  return sol;
}

std::vector<LocalSolution> local_solutions(int d, const std::vector<std::optional<std::vector<int>>>& types,
                                           const std::vector<Perm>& group, bool parallel) {
  const std::size_t m = types.size();
  std::vector<std::vector<Perm>> choices(m);
  for (std::size_t f = 0; f < m; ++f) {
    for (const auto& g : group) {
      if (!types[f] || g.cycle_type() == *types[f]) choices[f].push_back(g);
    }
  }
  std::set<LocalSolution> found;
  const long first_count = static_cast<long>(choices[0].size());
#pragma omp parallel if (parallel)
  {
    std::set<LocalSolution> mine;
    std::vector<Perm> tuple(m);
#pragma omp for schedule(dynamic)
    for (long i0 = 0; i0 < first_count; ++i0) {
      tuple[0] = choices[0][static_cast<std::size_t>(i0)];
      std::function<void(std::size_t, const Perm&)> fill = [&](std::size_t f, const Perm& product) {
        if (f + 1 == m) {
          const Perm last = product.inverse();
          if (types[f] && last.cycle_type() != *types[f]) return;
          tuple[f] = last;
          if (auto s = shape_of(d, tuple)) mine.insert(std::move(*s));
          return;
        }
        for (const auto& g : choices[f]) {
          tuple[f] = g;
          fill(f + 1, product * g);
        }
      };
      if (m == 1) {
        if (tuple[0].is_identity() && (!types[0] || tuple[0].cycle_type() == *types[0])) {
          if (auto s = shape_of(d, tuple)) mine.insert(std::move(*s));
        }
      } else {
        fill(1, tuple[0]);
      }
    }
#pragma omp critical(tropcorr_oracle_local)
    found.insert(mine.begin(), mine.end());
  }
  return {found.begin(), found.end()};
}

// Distributes items (in order) over groups of matching length. Items marked
// as interchangeable with their predecessor take a group index no smaller
// than the predecessor's, so each distinct distribution appears once.
std::vector<std::vector<std::size_t>> distributions(const std::vector<int>& item_length,
                                                    const std::vector<char>& same_as_previous,
                                                    const std::vector<int>& group_length,
                                                    const std::vector<int>& group_capacity) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(item_length.size());
  std::vector<int> left = group_capacity;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == item_length.size()) {
      out.push_back(pick);
      return;
    }
    const std::size_t start = (i > 0 && same_as_previous[i]) ? pick[i - 1] : 0;
    for (std::size_t g = start; g < group_length.size(); ++g) {
      if (group_length[g] != item_length[i] || left[g] == 0) continue;
      --left[g];
      pick[i] = g;
      go(i + 1);
      ++left[g];
    }
  };
  go(0);
  return out;
}

struct GlobalVertex {
  std::size_t image;
  const LocalVertex* local;
};

// Per-task options: a leg task fixes leg_vertex for the preimages over one
// label; an edge task fixes the T2 edges over one T1 edge.
struct TaskOption {
  std::vector<std::pair<std::size_t, std::size_t>> legs;  // (preimage, vertex)
  std::vector<TypeEdge> edges;
};

void assemble(const LegData& L, const MarkedTree& t1, const ExplicitTree& down,
              const std::vector<std::vector<std::size_t>>& flag_of_leg,
              const std::vector<std::pair<std::size_t, std::size_t>>& flag_of_edge,
              const std::vector<const LocalSolution*>& choice, std::map<TypeKey, CombinatorialType>& sink) {
  std::vector<GlobalVertex> verts;
  std::vector<std::vector<std::size_t>> at(down.vertices.size());
  for (std::size_t w = 0; w < down.vertices.size(); ++w) {
    for (const auto& lv : *choice[w]) {
      at[w].push_back(verts.size());
      verts.push_back({w, &lv});
    }
  }
  std::vector<std::vector<TaskOption>> tasks;

  for (std::size_t p = 0; p < L.order.size(); ++p) {
    const std::size_t w = down.leg_vertex[p];
    const std::size_t f = flag_of_leg[w][p];
    std::vector<int> group_length, group_capacity;
    std::vector<std::size_t> group_vertex;
    for (std::size_t v : at[w]) {
      const auto& cyc = verts[v].local->flag_cycles[f];
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (k > 0 && cyc[k] == cyc[k - 1]) {
          ++group_capacity.back();
          continue;
        }
        group_length.push_back(cyc[k]);
        group_capacity.push_back(1);
        group_vertex.push_back(v);
      }
    }
    std::vector<std::size_t> items;
    std::vector<int> item_length;
    for (std::size_t q = 0; q < L.leg_map.size(); ++q) {
      if (L.leg_map[q] != p) continue;
      items.push_back(q);
      item_length.push_back(L.leg_degree[q]);
    }
    std::vector<TaskOption> options;
    for (const auto& pick : distributions(item_length, std::vector<char>(items.size(), 0), group_length, group_capacity)) {
      TaskOption o;
      for (std::size_t i = 0; i < items.size(); ++i) o.legs.emplace_back(items[i], group_vertex[pick[i]]);
      options.push_back(std::move(o));
    }
    if (options.empty()) return;
    tasks.push_back(std::move(options));
  }

  for (std::size_t j = 0; j < down.edges.size(); ++j) {
    const std::size_t c = down.edges[j].child, par = down.edges[j].parent;
    const auto [fc, fp] = flag_of_edge[j];
    std::vector<int> group_length, group_capacity;
    std::vector<std::size_t> group_vertex;
    for (std::size_t v : at[par]) {
      const auto& cyc = verts[v].local->flag_cycles[fp];
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (k > 0 && cyc[k] == cyc[k - 1]) {
          ++group_capacity.back();
          continue;
        }
        group_length.push_back(cyc[k]);
        group_capacity.push_back(1);
        group_vertex.push_back(v);
      }
    }
    std::vector<int> item_length;
    std::vector<std::size_t> item_vertex;
    std::vector<char> same;
    for (std::size_t v : at[c]) {
      const auto& cyc = verts[v].local->flag_cycles[fc];
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        same.push_back(k > 0 && cyc[k] == cyc[k - 1]);
        item_length.push_back(cyc[k]);
        item_vertex.push_back(v);
      }
    }
    std::vector<TaskOption> options;
    for (const auto& pick : distributions(item_length, same, group_length, group_capacity)) {
      TaskOption o;
      std::set<std::pair<std::size_t, std::size_t>> pairs;
      bool multi = false;
      for (std::size_t i = 0; i < item_length.size(); ++i) {
        const std::size_t outer = group_vertex[pick[i]];
        multi |= !pairs.insert({item_vertex[i], outer}).second;
        o.edges.push_back(TypeEdge{item_vertex[i], outer, j, item_length[i]});
      }
      if (!multi) options.push_back(std::move(o));
    }
    if (options.empty()) return;
    tasks.push_back(std::move(options));
  }

  std::vector<std::size_t> idx(tasks.size(), 0);
  while (true) {
    CombinatorialType type;
    type.legs = L;
    type.t1 = t1;
    for (const auto& v : verts) type.vertices.push_back(TypeVertex{v.image, v.local->degree});
    type.leg_vertex.assign(L.leg_map.size(), 0);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      const TaskOption& o = tasks[t][idx[t]];
      for (const auto& [q, v] : o.legs) type.leg_vertex[q] = v;
      type.edges.insert(type.edges.end(), o.edges.begin(), o.edges.end());
    }
    bool tree = type.edges.size() + 1 == type.vertices.size();
    if (tree) {
      std::vector<std::size_t> parent(type.vertices.size());
      for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      };
      for (const auto& e : type.edges) {
        const std::size_t a = find(e.inner), b = find(e.outer);
        if (a == b) tree = false;
        parent[a] = b;
      }
    }
    if (tree) {
      TypeKey key = type_key(type);
      sink.try_emplace(std::move(key), std::move(type));
    }
    std::size_t t = 0;
    while (t < tasks.size() && ++idx[t] == tasks[t].size()) idx[t++] = 0;
    if (t == tasks.size()) break;
  }
}

std::vector<CombinatorialType> oracle_impl(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                           const MarkedTree& t1, const OracleOptions& options, bool parallel) {
  const int d = cover.degree();
  const std::size_t n = cover.order().size();
  if (d > std::min(options.max_degree, 4) || n > std::min<std::size_t>(options.max_n, 6)) {
    throw Error(Errc::SizeBound, "the realizability oracle is limited to d <= 4 and n <= 6");
  }
  if (!(t1.marking() == cover.order())) throw Error(Errc::MarkingMismatch, "T1 must be marked by the cover's order");
  const LegData L = leg_data(cover, portrait);
  const ExplicitTree down = to_explicit_tree(t1);
  const std::vector<Perm> group = symmetric_group(d);

  std::vector<std::vector<std::size_t>> flag_of_leg(down.vertices.size(), std::vector<std::size_t>(n));
  std::vector<std::pair<std::size_t, std::size_t>> flag_of_edge(down.edges.size());
  std::vector<std::vector<LocalSolution>> solutions(down.vertices.size());
  for (std::size_t w = 0; w < down.vertices.size(); ++w) {
    std::vector<std::optional<std::vector<int>>> types;
    for (std::size_t p : down.vertices[w].legs) {
      flag_of_leg[w][p] = types.size();
      types.emplace_back(cover.perm(p).cycle_type());
    }
    for (std::size_t j : down.vertices[w].edges) {
      (down.edges[j].child == w ? flag_of_edge[j].first : flag_of_edge[j].second) = types.size();
      types.emplace_back(std::nullopt);
    }
    solutions[w] = local_solutions(d, types, group, parallel);
    if (solutions[w].empty()) return {};
  }

  std::vector<std::vector<const LocalSolution*>> combos;
  std::vector<std::size_t> idx(solutions.size(), 0);
  while (true) {
    std::vector<const LocalSolution*> pick;
    for (std::size_t w = 0; w < solutions.size(); ++w) pick.push_back(&solutions[w][idx[w]]);
    combos.push_back(std::move(pick));
    std::size_t w = 0;
    while (w < solutions.size() && ++idx[w] == solutions[w].size()) idx[w++] = 0;
    if (w == solutions.size()) break;
  }

  std::map<TypeKey, CombinatorialType> found;
  const long count = static_cast<long>(combos.size());
#pragma omp parallel if (parallel)
  {
    std::map<TypeKey, CombinatorialType> mine;
#pragma omp for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      assemble(L, t1, down, flag_of_leg, flag_of_edge, combos[static_cast<std::size_t>(i)], mine);
    }
#pragma omp critical(tropcorr_oracle_merge)
    for (auto& [k, v] : mine) found.try_emplace(k, std::move(v));
  }
  std::vector<CombinatorialType> out;
  for (auto& [_, t] : found) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::vector<CombinatorialType> enumerate_profile_types_oracle(const MonodromyCover& cover,
                                                              const DynamicalPortrait& portrait,
                                                              const MarkedTree& t1, const OracleOptions& options) {
  return oracle_impl(cover, portrait, t1, options, true);
}

std::vector<CombinatorialType> enumerate_profile_types_oracle_serial(const MonodromyCover& cover,
                                                                     const DynamicalPortrait& portrait,
                                                                     const MarkedTree& t1,
                                                                     const OracleOptions& options) {
  return oracle_impl(cover, portrait, t1, options, false);
}

}  // namespace tropcorr
