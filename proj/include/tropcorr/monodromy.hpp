#pragma once

// Branched covers of the sphere given by permutation monodromy.
//
// Conventions: sheets are 0-based internally and 1-based in text. A
// permutation acts on the right of sheet indices, so (a * b)(x) applies a
// first and then b. The monodromy tuple is listed in the cyclic order of the
// marking and satisfies sigma_1 * sigma_2 * ... * sigma_n = id.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tropcorr/rational.hpp"
#include "tropcorr/trees.hpp"

namespace tropcorr {

class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);  // identity
  /// images[x] = x * sigma. Throws BadPermutation unless a bijection.
  static Perm from_images(std::vector<int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int sheet) const { return images_[static_cast<std::size_t>(sheet)]; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;
  Perm inverse() const;
  /// Cycles, each starting at its smallest sheet, sorted by that sheet.
  std::vector<std::vector<int>> cycles() const;
  /// Sorted cycle lengths (including fixed points).
  std::vector<int> cycle_type() const;
  int cycle_count() const;

  friend Perm operator*(const Perm& first, const Perm& then);
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> images_;
};

/// "(1 2)(3 4 5)", "id" or "" for the identity. Sheets are 1-based.
Perm parse_cycles(std::string_view text, int degree);
std::string to_cycle_string(const Perm& p);

struct PreimagePoint {
  std::size_t base = 0;       // index of the label in the cover's marking
  std::vector<int> cycle;     // sorted sheets
  int local_degree = 1;
  std::string key;            // "label#minSheet", minSheet 1-based
  friend bool operator==(const PreimagePoint&, const PreimagePoint&) = default;
};

struct CoverOptions {
  bool allow_degree_one = false;
};

class MonodromyCover {
 public:
  const Marking& order() const { return order_; }
  int degree() const { return degree_; }
  const std::vector<Perm>& perms() const { return perms_; }
  const Perm& perm(std::size_t i) const { return perms_.at(i); }
  /// Sorted by base position, then by smallest sheet.
  const std::vector<PreimagePoint>& preimages() const { return preimages_; }
  /// The labels of preimages(), in the same order.
  const Marking& preimage_marking() const { return preimage_marking_; }
  const std::vector<std::size_t>& preimages_over(std::size_t base) const { return over_.at(base); }
  /// The preimage point over `base` whose cycle contains `sheet`.
  std::size_t preimage_at(std::size_t base, int sheet) const;
  std::optional<std::size_t> find_preimage(std::string_view key) const { return preimage_marking_.find(key); }
  /// Restriction of the cover to marked points: preimage index -> base index.
  std::vector<std::size_t> leg_map() const;

  friend bool operator==(const MonodromyCover&, const MonodromyCover&) = default;

 private:
  friend MonodromyCover validate_cover(const Marking&, int, std::vector<Perm>, const CoverOptions&);

  Marking order_;
  int degree_ = 0;
  std::vector<Perm> perms_;
  std::vector<PreimagePoint> preimages_;
  Marking preimage_marking_;
  std::vector<std::vector<std::size_t>> over_;
};

/// Checks product = id, transitivity and Riemann-Hurwitz (genus 0), then
/// tabulates preimage points.
MonodromyCover validate_cover(const Marking& order, int degree, std::vector<Perm> perms,
                              const CoverOptions& options = {});

/// The inclusion P -> preimages of P, plus the induced self-map of P.
struct DynamicalPortrait {
  std::vector<std::size_t> iota;  // label index -> preimage index
  std::vector<std::size_t> step;  // label index -> label index
  friend bool operator==(const DynamicalPortrait&, const DynamicalPortrait&) = default;
};

/// Throws NotInjective or NotPostcriticallyClosed.
DynamicalPortrait validate_portrait(const MonodromyCover& cover, std::vector<std::size_t> iota);
/// Portrait from preimage keys, one per label of the cover's order.
DynamicalPortrait validate_portrait(const MonodromyCover& cover, std::span<const std::string> iota_keys);

struct OrbifoldSignature {
  /// nullopt means infinity (a periodic cycle through a critical point).
  std::vector<std::optional<std::uint64_t>> nu;
  /// Sum over labels of (1 - 1/nu).
  Rational euler_sum;
  bool hyperbolic = false;
};

OrbifoldSignature orbifold_signature(const MonodromyCover& cover, const DynamicalPortrait& portrait);

struct BraidResult {
  MonodromyCover cover;
  DynamicalPortrait portrait;
  /// new position -> old position of each label.
  std::vector<std::size_t> label_permutation;
};

/// Applies half-twists: +i is h_i, -i its inverse, 1 <= i <= n-1.
/// Throws BadGenerator.
BraidResult braid_act(const MonodromyCover& cover, const DynamicalPortrait& portrait, std::span<const int> word);

/// Positions [first, last] of a block of consecutive labels, canonicalized to
/// the side that does not contain the last label. Throws NotConsecutive or
/// TrivialBlock.
struct BlockRange {
  std::size_t first = 0;
  std::size_t last = 0;
  friend bool operator==(const BlockRange&, const BlockRange&) = default;
};
BlockRange canonical_block(const Marking& order, Mask block);

/// Ordered product of the generators over the canonical block.
Perm curve_monodromy(const MonodromyCover& cover, Mask block);

/// Orbits of the group generated by `gens` on {0..degree-1}, each sorted,
/// listed by smallest element.
std::vector<std::vector<int>> orbits(int degree, std::span<const Perm> gens);

}  // namespace tropcorr
