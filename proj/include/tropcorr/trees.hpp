#pragma once

// Stable P-marked trees, stored as systems of pairwise compatible splits.
//
// A split is a bipartition of the marking set with at least two labels on
// each side. It is stored as a bitmask of the side that does not contain the
// last label of the marking, so two splits are equal iff their masks are.
// A set of splits is a stable tree iff the splits are pairwise compatible;
// the explicit vertex/edge view is reconstructed on demand.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropcorr {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxLabels = 64;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
inline int popcount(Mask m) { return __builtin_popcountll(m); }

/// An ordered set of distinct labels. The order matters: the last label
/// fixes split canonicalization, and for covers it is the cyclic order.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<std::string> labels, std::size_t min_size = 3);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Error(BadLabel) for unknown names.
  std::size_t index(std::string_view name) const;

  Mask full() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }
  Mask last_bit() const { return bit(size() - 1); }

  Mask mask_of(std::span<const std::string> names) const;
  std::vector<std::string> names(Mask side) const;

  friend bool operator==(const Marking&, const Marking&) = default;

 private:
  std::vector<std::string> labels_;
};

struct Split {
  Mask side = 0;
  friend auto operator<=>(const Split&, const Split&) = default;
};

/// Canonical split for `side` (either side may be given). Throws TrivialSplit.
Split make_split(const Marking& marking, Mask side);
/// Same as make_split but returns nullopt when one side has fewer than two labels.
std::optional<Split> try_make_split(const Marking& marking, Mask side);

/// Canonical sides both avoid the last label, so compatibility reduces to
/// "disjoint or nested".
inline bool compatible(Split a, Split b) {
  return (a.side & b.side) == 0 || (a.side & ~b.side) == 0 || (b.side & ~a.side) == 0;
}

/// Comma-joined labels of the canonical side, e.g. "a,b".
std::string split_key(const Marking& marking, Split s);
/// Parses a split key or a label list into a canonical split.
Split parse_split(const Marking& marking, std::span<const std::string> labels);

/// Maps a side over one marking onto a sub-marking: bit j of the result is
/// bit picks[j] of `side`.
Mask restrict_side(Mask side, std::span<const std::size_t> picks);

class MarkedTree {
 public:
  MarkedTree() = default;

  const Marking& marking() const { return marking_; }
  const std::vector<Split>& splits() const { return splits_; }
  std::size_t edge_count() const { return splits_.size(); }
  bool is_cone_point() const { return splits_.empty(); }
  bool contains(Split s) const;
  std::optional<std::size_t> index_of(Split s) const;

  friend bool operator==(const MarkedTree&, const MarkedTree&) = default;

 private:
  friend MarkedTree validate_split_system(const Marking&, std::vector<Mask>);
  friend MarkedTree one_vertex_tree(const Marking&);

  Marking marking_;
  std::vector<Split> splits_;  // sorted, distinct, pairwise compatible
};

/// Canonicalizes and sorts; duplicate inputs are merged. Throws TrivialSplit
/// or IncompatibleSplits (naming the crossing pair).
MarkedTree validate_split_system(const Marking& marking, std::vector<Mask> sides);
MarkedTree one_vertex_tree(const Marking& marking);

struct ExplicitVertex {
  std::vector<std::size_t> legs;
  std::vector<std::size_t> edges;
  std::size_t valence = 0;
};

struct ExplicitEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  Split split;
};

/// Vertex 0 is the region containing the last label; vertex i + 1 is the
/// region directly inside splits()[i]; edge i carries splits()[i] and joins
/// vertex i + 1 to the vertex of the smallest split strictly containing it.
struct ExplicitTree {
  Marking marking;
  std::vector<ExplicitVertex> vertices;
  std::vector<ExplicitEdge> edges;
  std::vector<std::size_t> leg_vertex;
};

ExplicitTree to_explicit_tree(const MarkedTree& tree);

/// Leg bipartition induced by deleting each edge, recomputed by graph search.
std::vector<Split> edge_splits_by_search(const ExplicitTree& tree);

struct EnumerationOptions {
  std::size_t max_edges = std::numeric_limits<std::size_t>::max();
  std::size_t max_n = 9;
};

/// All proper splits of the marking, sorted.
std::vector<Split> all_splits(const Marking& marking);

/// Streams every compatible split system with at most max_edges splits, each
/// exactly once. Throws SizeBound when the marking exceeds max_n.
void enumerate_stable_trees(const Marking& marking, const EnumerationOptions& options,
                            const std::function<void(const MarkedTree&)>& visit);

/// counts[k] = number of stable trees with k edges. OpenMP over the first split.
std::vector<std::uint64_t> count_stable_trees(const Marking& marking,
                                              const EnumerationOptions& options);
/// Serial reference for count_stable_trees.
std::vector<std::uint64_t> count_stable_trees_serial(const Marking& marking,
                                                     const EnumerationOptions& options);

/// Removes exactly the given splits. Throws UnknownSplit.
MarkedTree contract(const MarkedTree& tree, std::span<const Split> splits_to_remove);

/// True iff coarse.splits() is a subset of fine.splits(). Throws MarkingMismatch.
bool is_contraction_of(const MarkedTree& coarse, const MarkedTree& fine);

/// Pushforward along forgetting labels outside `sub` (matched by name).
/// Throws BadSubmarking.
MarkedTree forget_pushforward(const MarkedTree& tree, const Marking& sub);
/// Same, with the sub-marking given by positions: label j of `target` is
/// label picks[j] of the tree's marking.
MarkedTree forget_pushforward(const MarkedTree& tree, const Marking& target,
                              std::span<const std::size_t> picks);

/// Positions of `sub`'s labels inside `super`. Throws BadSubmarking.
std::vector<std::size_t> submarking_picks(const Marking& super, const Marking& sub);

}  // namespace tropcorr
