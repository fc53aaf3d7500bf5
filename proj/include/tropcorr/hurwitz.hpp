#pragma once

// Combinatorial types of tropical admissible covers, the cones they span,
// the two projections to the tropical moduli space, weakly fixed cones and
// the brute-force realizability oracle.
//
// Coordinates: a point of cone(type) assigns a_e >= 0 to each edge e of T1
// (aligned with t1.splits()). pi1 gives e the length lcmdeg(e) * a_e; an
// edge e' of T2 over e gets length (lcmdeg(e) / edgedeg(e')) * a_e.

#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "tropcorr/monodromy.hpp"
#include "tropcorr/pullback.hpp"
#include "tropcorr/spectral.hpp"
#include "tropcorr/trees.hpp"
#include "tropcorr/tropical.hpp"

namespace tropcorr {

/// The cover restricted to marked points.
struct LegData {
  Marking order;
  Marking preimage_marking;
  std::vector<std::size_t> leg_map;  // preimage point -> label of order
  std::vector<int> leg_degree;
  std::vector<std::size_t> iota;     // label -> preimage point
  int degree = 0;
  friend bool operator==(const LegData&, const LegData&) = default;
};

LegData leg_data(const MonodromyCover& cover, const DynamicalPortrait& portrait);

struct TypeVertex {
  std::size_t image = 0;  // vertex of to_explicit_tree(t1)
  int degree = 0;
  friend bool operator==(const TypeVertex&, const TypeVertex&) = default;
};

struct TypeEdge {
  std::size_t inner = 0;  // T2 vertex over the child end of the image edge
  std::size_t outer = 0;  // T2 vertex over the parent end
  std::size_t image = 0;  // index into t1.splits()
  int degree = 0;
  friend bool operator==(const TypeEdge&, const TypeEdge&) = default;
};

struct CombinatorialType {
  LegData legs;
  MarkedTree t1;
  std::vector<TypeVertex> vertices;
  std::vector<TypeEdge> edges;
  std::vector<std::size_t> leg_vertex;  // preimage point -> T2 vertex
};

/// Isomorphism invariant: T1 plus the set of (T2 split, image split, degree).
struct TypeKey {
  std::vector<Split> t1;
  std::vector<std::tuple<Mask, Mask, int>> edges;
  friend auto operator<=>(const TypeKey&, const TypeKey&) = default;
};
TypeKey type_key(const CombinatorialType& type);

/// Leg sides of the T2 edges (canonicalized, not checked for stability).
std::vector<Mask> upstairs_sides(const CombinatorialType& type);
/// T2 as a marked tree over the preimage points. Requires a valid type.
MarkedTree upstairs_tree(const CombinatorialType& type);

CombinatorialType build_type(const PullbackResult& pullback);
CombinatorialType build_type(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                             const StandardMulticurve& gamma);

/// Checks, in order: T2 is a tree, stability, homomorphism, balancing (with
/// fibers of total degree d), local Riemann-Hurwitz. Throws UnstableTree,
/// NotHomomorphism, BalancingFailure, LocalRHFailure or KeyMismatch.
const CombinatorialType& validate_type(const CombinatorialType& type);

/// Contracts exactly the given T1 edges and their fibers. Throws UnknownEdge.
CombinatorialType contract_type(const CombinatorialType& type, std::span<const Split> edges);

/// lcm of edge degrees over each T1 edge.
std::vector<long> lcmdeg(const CombinatorialType& type);

struct HurwitzConePoint {
  CombinatorialType type;
  std::vector<Rational> coords;  // aligned with type.t1.splits()
};

/// Throws NegativeLength or KeyMismatch.
HurwitzConePoint make_hurwitz_point(CombinatorialType type, std::vector<Rational> coords);

ConePoint pi1_trop(const HurwitzConePoint& point);
/// Metrized T2 over the preimage marking.
ConePoint pi2_tilde_trop(const HurwitzConePoint& point);
/// pi2_tilde followed by forgetting to P through the portrait.
ConePoint pi2_trop(const HurwitzConePoint& point);

HurwitzConePoint nu_trop(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                         const WeightedMulticurve& weighted);

/// Columns are T1 edges, rows the P-splits hit. Built from pi2 on unit
/// directions and checked against the sum of 1/edgedeg.
TltMatrix branch_matrix(const CombinatorialType& type);

bool is_weakly_fixed(const CombinatorialType& type);

struct FixedConeReport {
  CombinatorialType type;
  std::optional<StandardMulticurve> gamma;  // when built from a multicurve
  bool weakly_fixed = false;
  TltMatrix branch;                         // zero-padded square when weakly fixed
  std::optional<EigenCertificate> eigen;
  std::optional<EigenCone> eigencone;
  std::vector<Ray> fixed_rays;              // L1-normalized points of cone(T1)
  bool obstruction = false;
  std::string disclaimer;
};

inline constexpr const char* kNaiveDisclaimer =
    "naive tropical correspondence: cones carry no multiplicities";

FixedConeReport fixed_cone_report(const CombinatorialType& type,
                                  std::optional<StandardMulticurve> gamma = std::nullopt);

struct ScanOptions {
  std::size_t max_blocks = 3;
  std::vector<std::vector<int>> braid_words;  // the empty word is always scanned first
  std::size_t max_n = 12;
  int max_degree = 12;
};

struct ScanEntry {
  std::vector<int> word;
  FixedConeReport report;
};

struct ScanResult {
  OrbifoldSignature signature;
  bool parabolic_warning = false;
  std::size_t multicurves_examined = 0;
  std::vector<ScanEntry> entries;  // weakly fixed cones only
};

/// OpenMP over (presentation, multicurve) pairs. Throws SizeBound.
ScanResult scan_obstructions(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                             const ScanOptions& options);
ScanResult scan_obstructions_serial(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                    const ScanOptions& options);

enum class IterationStatus { Completed, ConePoint, NonStandardCurve };
std::string_view status_name(IterationStatus status);

struct IterationResult {
  IterationStatus status = IterationStatus::Completed;
  std::vector<ConePoint> trace;  // starts with the input curve
};

/// Repeatedly applies the Thurston pullback on weighted standard multicurves.
IterationResult iterate_pullback(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                 const WeightedMulticurve& start, std::size_t steps);

struct OracleOptions {
  int max_degree = 4;
  std::size_t max_n = 6;
};

/// Every combinatorial type over t1 with the cover's leg profile whose local
/// pieces are realized by permutation tuples and whose T2 is a tree. Hard
/// limits d <= 4, n <= 6 (SizeBound). Sorted by key.
std::vector<CombinatorialType> enumerate_profile_types_oracle(const MonodromyCover& cover,
                                                              const DynamicalPortrait& portrait,
                                                              const MarkedTree& t1,
                                                              const OracleOptions& options = {});
std::vector<CombinatorialType> enumerate_profile_types_oracle_serial(const MonodromyCover& cover,
                                                                     const DynamicalPortrait& portrait,
                                                                     const MarkedTree& t1,
                                                                     const OracleOptions& options = {});

}  // namespace tropcorr
