#include "tropcorr/trees.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_set>

#include "tropcorr/errors.hpp"

namespace tropcorr {

Marking::Marking(std::vector<std::string> labels, std::size_t min_size) : labels_(std::move(labels)) {
  if (labels_.size() < min_size) {
    throw Error(Errc::BadLabel, "marking needs at least " + std::to_string(min_size) + " labels, got " +
                                    std::to_string(labels_.size()));
  }
  if (labels_.size() > kMaxLabels) {
    throw Error(Errc::SizeBound, "marking has " + std::to_string(labels_.size()) + " labels; limit is 64");
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw Error(Errc::BadLabel, "empty label");
    if (!seen.insert(l).second) throw Error(Errc::BadLabel, "duplicate label '" + l + "'");
  }
}

std::optional<std::size_t> Marking::find(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Marking::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(Errc::BadLabel, "unknown label '" + std::string(name) + "'");
}

Mask Marking::mask_of(std::span<const std::string> names) const {
  Mask m = 0;
  for (const auto& n : names) m |= bit(index(n));
  return m;
}

std::vector<std::string> Marking::names(Mask side) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (side & bit(i)) out.push_back(labels_[i]);
  }
  return out;
}

std::optional<Split> try_make_split(const Marking& marking, Mask side) {
  side &= marking.full();
  if (side & marking.last_bit()) side = marking.full() & ~side;
  const int k = popcount(side);
  if (k < 2 || static_cast<std::size_t>(k) + 2 > marking.size()) return std::nullopt;
  return Split{side};
}

Split make_split(const Marking& marking, Mask side) {
  if (auto s = try_make_split(marking, side)) return *s;
  throw Error(Errc::TrivialSplit,
              "side {" + split_key(marking, Split{side & marking.full()}) + "} leaves fewer than two labels on one side");
}

std::string split_key(const Marking& marking, Split s) {
  std::string out;
  for (const auto& name : marking.names(s.side)) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

Split parse_split(const Marking& marking, std::span<const std::string> labels) {
  std::vector<std::string> names;
  for (const auto& l : labels) {
    std::size_t start = 0;
    while (start <= l.size()) {
      auto comma = l.find(',', start);
      if (comma == std::string::npos) comma = l.size();
      if (comma > start) names.push_back(l.substr(start, comma - start));
      start = comma + 1;
    }
  }
  return make_split(marking, marking.mask_of(names));
}

Mask restrict_side(Mask side, std::span<const std::size_t> picks) {
  Mask out = 0;
  for (std::size_t j = 0; j < picks.size(); ++j) {
    if (side & bit(picks[j])) out |= bit(j);
  }
  return out;
}

bool MarkedTree::contains(Split s) const { return std::binary_search(splits_.begin(), splits_.end(), s); }

std::optional<std::size_t> MarkedTree::index_of(Split s) const {
  auto it = std::lower_bound(splits_.begin(), splits_.end(), s);
  if (it == splits_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - splits_.begin());
}

MarkedTree one_vertex_tree(const Marking& marking) {
  MarkedTree t;
  t.marking_ = marking;
  return t;
}

MarkedTree validate_split_system(const Marking& marking, std::vector<Mask> sides) {
  std::vector<Split> splits;
  splits.reserve(sides.size());
  for (Mask m : sides) splits.push_back(make_split(marking, m));
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  for (std::size_t i = 0; i < splits.size(); ++i) {
    for (std::size_t j = i + 1; j < splits.size(); ++j) {
      if (!compatible(splits[i], splits[j])) {
        throw Error(Errc::IncompatibleSplits, "{" + split_key(marking, splits[i]) + "} crosses {" +
                                                  split_key(marking, splits[j]) + "}");
      }
    }
  }
  MarkedTree t = one_vertex_tree(marking);
  t.splits_ = std::move(splits);
  return t;
}

ExplicitTree to_explicit_tree(const MarkedTree& tree) {
  const auto& splits = tree.splits();
  const Marking& marking = tree.marking();
  ExplicitTree out;
  out.marking = marking;
  out.vertices.resize(splits.size() + 1);
  out.edges.resize(splits.size());

  auto smallest_containing = [&](Mask m, std::size_t skip) -> std::size_t {
    std::size_t best = 0;
    int best_size = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < splits.size(); ++j) {
      if (j == skip) continue;
      const Mask s = splits[j].side;
      if ((m & ~s) == 0 && s != m && popcount(s) < best_size) {
        best = j + 1;
        best_size = popcount(s);
      }
    }
    return best;
  };

  for (std::size_t i = 0; i < splits.size(); ++i) {
    const std::size_t parent = smallest_containing(splits[i].side, i);
    out.edges[i] = ExplicitEdge{parent, i + 1, splits[i]};
    out.vertices[parent].edges.push_back(i);
    out.vertices[i + 1].edges.push_back(i);
  }
  out.leg_vertex.resize(marking.size());
  for (std::size_t x = 0; x < marking.size(); ++x) {
    std::size_t v = 0;
    int best_size = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < splits.size(); ++j) {
      if ((splits[j].side & bit(x)) && popcount(splits[j].side) < best_size) {
        v = j + 1;
        best_size = popcount(splits[j].side);
      }
    }
    out.leg_vertex[x] = v;
    out.vertices[v].legs.push_back(x);
  }
  for (auto& v : out.vertices) {
    v.valence = v.legs.size() + v.edges.size();
    if (v.valence < 3) throw Error(Errc::Internal, "reconstructed tree has a vertex of valence < 3");
  }
  return out;
}

std::vector<Split> edge_splits_by_search(const ExplicitTree& tree) {
  std::vector<Split> out;
  out.reserve(tree.edges.size());
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    std::vector<char> seen(tree.vertices.size(), 0);
    std::queue<std::size_t> q;
    q.push(tree.edges[e].child);
    seen[tree.edges[e].child] = 1;
    seen[tree.edges[e].parent] = 1;
    Mask side = 0;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t leg : tree.vertices[v].legs) side |= bit(leg);
      for (std::size_t f : tree.vertices[v].edges) {
        for (std::size_t w : {tree.edges[f].parent, tree.edges[f].child}) {
          if (!seen[w]) {
            seen[w] = 1;
            q.push(w);
          }
        }
      }
    }
    out.push_back(make_split(tree.marking, side));
  }
  return out;
}

std::vector<Split> all_splits(const Marking& marking) {
  std::vector<Split> out;
  const Mask lower = marking.full() & ~marking.last_bit();
  // Canonical sides are exactly the subsets of the first n-1 labels of size
  // between 2 and n-2.
  for (Mask m = lower;; m = (m - 1) & lower) {
    if (auto s = try_make_split(marking, m); s && s->side == m) out.push_back(*s);
    if (m == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_bound(const Marking& marking, const EnumerationOptions& options) {
  if (marking.size() > options.max_n) {
    throw Error(Errc::SizeBound, "n = " + std::to_string(marking.size()) + " exceeds the enumeration bound " +
                                     std::to_string(options.max_n));
  }
}

template <typename Visit>
void extend(const std::vector<Split>& all, std::size_t next, std::vector<Split>& chosen, std::size_t max_edges,
            Visit& visit) {
  visit(chosen);
  if (chosen.size() >= max_edges) return;
  for (std::size_t i = next; i < all.size(); ++i) {
    bool ok = true;
    for (Split s : chosen) {
      if (!compatible(s, all[i])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen.push_back(all[i]);
    extend(all, i + 1, chosen, max_edges, visit);
    chosen.pop_back();
  }
}

std::size_t effective_max(const Marking& marking, const EnumerationOptions& options) {
  const std::size_t cap = marking.size() - 3;
  return std::min(cap, options.max_edges);
}

}  // namespace

void enumerate_stable_trees(const Marking& marking, const EnumerationOptions& options,
                            const std::function<void(const MarkedTree&)>& visit) {
  check_bound(marking, options);
  const auto all = all_splits(marking);
  std::vector<Split> chosen;
  auto emit = [&](const std::vector<Split>& system) {
    std::vector<Mask> sides;
    sides.reserve(system.size());
    for (Split s : system) sides.push_back(s.side);
    visit(validate_split_system(marking, std::move(sides)));
  };
  extend(all, 0, chosen, effective_max(marking, options), emit);
}

std::vector<std::uint64_t> count_stable_trees_serial(const Marking& marking, const EnumerationOptions& options) {
  check_bound(marking, options);
  const auto all = all_splits(marking);
  const std::size_t max_edges = effective_max(marking, options);
  std::vector<std::uint64_t> counts(max_edges + 1, 0);
  std::vector<Split> chosen;
  auto tally = [&](const std::vector<Split>& system) { ++counts[system.size()]; };
  extend(all, 0, chosen, max_edges, tally);
  return counts;
}

std::vector<std::uint64_t> count_stable_trees(const Marking& marking, const EnumerationOptions& options) {
  check_bound(marking, options);
  const auto all = all_splits(marking);
  const std::size_t max_edges = effective_max(marking, options);
  std::vector<std::uint64_t> counts(max_edges + 1, 0);
  counts[0] = 1;
  if (max_edges == 0) return counts;
  const long long first_count = static_cast<long long>(all.size());

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(max_edges + 1, 0);
    std::vector<Split> chosen;
    auto tally = [&](const std::vector<Split>& system) { ++local[system.size()]; };
#pragma omp for schedule(dynamic, 1) nowait
    for (long long first = 0; first < first_count; ++first) {
      chosen.assign(1, all[static_cast<std::size_t>(first)]);
      extend(all, static_cast<std::size_t>(first) + 1, chosen, max_edges, tally);
    }
#pragma omp critical
    for (std::size_t k = 0; k <= max_edges; ++k) counts[k] += local[k];
  }
  return counts;
}

MarkedTree contract(const MarkedTree& tree, std::span<const Split> splits_to_remove) {
  std::set<Split> remove;
  for (Split s : splits_to_remove) {
    if (!tree.contains(s)) {
      throw Error(Errc::UnknownSplit, "{" + split_key(tree.marking(), s) + "} is not an edge of the tree");
    }
    remove.insert(s);
  }
  std::vector<Mask> kept;
  for (Split s : tree.splits()) {
    if (!remove.count(s)) kept.push_back(s.side);
  }
  return validate_split_system(tree.marking(), std::move(kept));
}

bool is_contraction_of(const MarkedTree& coarse, const MarkedTree& fine) {
  if (coarse.marking() != fine.marking()) throw Error(Errc::MarkingMismatch, "trees are marked by different sets");
  return std::includes(fine.splits().begin(), fine.splits().end(), coarse.splits().begin(), coarse.splits().end());
}

std::vector<std::size_t> submarking_picks(const Marking& super, const Marking& sub) {
  std::vector<std::size_t> picks;
  picks.reserve(sub.size());
  for (const auto& l : sub.labels()) {
    auto i = super.find(l);
    if (!i) throw Error(Errc::BadSubmarking, "label '" + l + "' is not in the ambient marking");
    picks.push_back(*i);
  }
  return picks;
}

MarkedTree forget_pushforward(const MarkedTree& tree, const Marking& target, std::span<const std::size_t> picks) {
  if (picks.size() != target.size() || target.size() < 3) {
    throw Error(Errc::BadSubmarking, "sub-marking must have at least three labels");
  }
  std::vector<Mask> sides;
  for (Split s : tree.splits()) {
    if (auto r = try_make_split(target, restrict_side(s.side, picks))) sides.push_back(r->side);
  }
  return validate_split_system(target, std::move(sides));
}

MarkedTree forget_pushforward(const MarkedTree& tree, const Marking& sub) {
  const auto picks = submarking_picks(tree.marking(), sub);
  return forget_pushforward(tree, sub, picks);
}

}  // namespace tropcorr
