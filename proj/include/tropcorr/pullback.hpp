#pragma once

// Pullback of standard multicurves through a cover and the Thurston linear
// transformations on curve weights.
//
// A standard multicurve is a laminar family of blocks of consecutive labels.
// Its dual tree has one region per block (the part inside the block but
// outside its sub-blocks) plus the root region containing the last label.

#include <optional>
#include <span>
#include <vector>

#include "tropcorr/monodromy.hpp"
#include "tropcorr/rational.hpp"
#include "tropcorr/spectral.hpp"
#include "tropcorr/trees.hpp"

namespace tropcorr {

struct Block {
  BlockRange range;
  Split split;
  friend bool operator==(const Block&, const Block&) = default;
};

class StandardMulticurve {
 public:
  StandardMulticurve() = default;

  const Marking& order() const { return order_; }
  /// Sorted by split, so blocks()[i] is dual_tree().splits()[i].
  const std::vector<Block>& blocks() const { return blocks_; }
  const MarkedTree& dual_tree() const { return tree_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  friend bool operator==(const StandardMulticurve&, const StandardMulticurve&) = default;

 private:
  friend StandardMulticurve validate_multicurve(const Marking&, std::span<const Mask>);

  Marking order_;
  std::vector<Block> blocks_;
  MarkedTree tree_;
};

/// Blocks as label masks; either side of a curve may be given. Repeated
/// curves are merged. Throws TrivialBlock, NotConsecutive or NotLaminar.
StandardMulticurve validate_multicurve(const Marking& order, std::span<const Mask> blocks);

struct WeightedMulticurve {
  StandardMulticurve curve;
  std::vector<Rational> weights;  // aligned with curve.blocks()
};

/// Throws NegativeLength or KeyMismatch.
WeightedMulticurve make_weighted(StandardMulticurve curve, std::vector<Rational> weights);

/// Every standard multicurve with at most max_blocks curves, ordered by size
/// and then by split list.
std::vector<StandardMulticurve> enumerate_standard_multicurves(const Marking& order, std::size_t max_blocks);

struct UpstairsVertex {
  std::size_t region = 0;        // vertex of the explicit dual tree
  std::vector<int> sheets;       // the orbit, sorted
  std::vector<std::size_t> legs; // preimage point indices
};

struct UpstairsEdge {
  std::size_t block = 0;         // index into gamma.blocks()
  std::vector<int> cycle;        // cycle of the block monodromy, sorted
  int degree = 0;
  std::size_t inner = 0;         // upstairs vertex inside the block
  std::size_t outer = 0;         // upstairs vertex outside
  Split split;                   // over the preimage marking
};

struct PullbackResult {
  MonodromyCover cover;
  DynamicalPortrait portrait;
  StandardMulticurve gamma;
  ExplicitTree downstairs;       // explicit dual tree of gamma
  std::vector<UpstairsVertex> vertices;
  std::vector<UpstairsEdge> edges;
  MarkedTree upstairs_tree;      // over cover.preimage_marking()
};

/// Region-orbit construction. Asserts the tree, stability and flag-count
/// invariants (Internal on failure).
PullbackResult pullback_tree(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                             const StandardMulticurve& gamma);

/// Sparse-by-construction rational matrix with split-labelled rows and columns.
struct TltMatrix {
  Marking row_marking;
  std::vector<Split> rows;
  Marking col_marking;
  std::vector<Split> cols;
  RationalMatrix entries;  // rows.size() x cols.size()

  RationalVector apply(std::span<const Rational> x) const { return multiply(entries, x); }
  std::optional<std::size_t> row_of(Split s) const;
  friend bool operator==(const TltMatrix&, const TltMatrix&) = default;
};

/// Curve classes rel the preimage points: entry 1/edgedeg at each edge's split.
TltMatrix tlt_tilde_matrix(const PullbackResult& result);

/// Curve classes rel P: restrict to the marked points through the portrait,
/// drop peripheral classes and sum coinciding ones.
TltMatrix tlt_matrix(const PullbackResult& result);

/// Aggregates a preimage-marked matrix onto P along the portrait.
TltMatrix push_to_marking(const TltMatrix& tilde, const MonodromyCover& cover, const DynamicalPortrait& portrait);

/// Row support of tlt_matrix.
std::vector<Split> phi_star(const PullbackResult& result);

/// Pads `m` with zero rows so its rows are exactly `targets` (in that order).
/// Returns nullopt when a nonzero row is not among the targets.
std::optional<TltMatrix> square_up(const TltMatrix& m, const MarkedTree& targets);

struct StabilityResult {
  bool stable = false;
  std::vector<Split> image;               // phi_star
  std::optional<TltMatrix> matrix;        // square, when stable
  std::optional<EigenCertificate> eigen;  // when stable and gamma nonempty
  bool obstruction = false;
};

StabilityResult stability_and_eigenvalue(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                         const StandardMulticurve& gamma);

}  // namespace tropcorr
