#pragma once

// JSON schemas shared by the CLI and the tests. Rationals are strings
// "p/q"; splits are arrays of the labels on their canonical side; objects
// keyed by split use the comma-joined key "a,b".

#include <optional>

#include "json.hpp"
#include "tropcorr/hurwitz.hpp"
#include "tropcorr/monodromy.hpp"
#include "tropcorr/pullback.hpp"
#include "tropcorr/spectral.hpp"
#include "tropcorr/trees.hpp"
#include "tropcorr/tropical.hpp"

namespace tropcorr {

using Json = nlohmann::json;

Json to_json(const Marking& marking);
Marking marking_from_json(const Json& j);

Json split_json(const Marking& marking, Split s);
Split split_from_json(const Marking& marking, const Json& j);

/// {marking, splits}
Json to_json(const MarkedTree& tree);
MarkedTree tree_from_json(const Json& j);
/// Splits only, against a known marking.
MarkedTree splits_from_json(const Marking& marking, const Json& splits);

/// {marking, tree, coords}
Json to_json(const ConePoint& point);
ConePoint cone_point_from_json(const Json& j);
Json to_json(const Ray& ray);

struct CoverInput {
  MonodromyCover cover;
  DynamicalPortrait portrait;
};
/// {order, degree, perms: {label: cycles}, iota: {label: key}, allow_degree_one?}
CoverInput cover_from_json(const Json& j);
Json to_json(const MonodromyCover& cover, const DynamicalPortrait& portrait);
Json to_json(const OrbifoldSignature& sig, const Marking& order);

/// {blocks: [[labels]]}
StandardMulticurve multicurve_from_json(const Marking& order, const Json& j);
/// {blocks, weights}
WeightedMulticurve weighted_from_json(const Marking& order, const Json& j);
Json to_json(const StandardMulticurve& gamma);

Json to_json(const PullbackResult& result);
Json to_json(const TltMatrix& m);
TltMatrix tlt_matrix_from_json(const Json& j);

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);
Json to_json(const Interval& iv);
Json to_json(const EigenCertificate& cert);
/// Parses and replays the certificate against `m` (Internal on failure).
EigenCertificate certificate_from_json(const Json& j, const RationalMatrix& m);
Json to_json(const EigenCone& cone);
Json matrix_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j);

Json to_json(const CombinatorialType& type);
CombinatorialType type_from_json(const Json& j);
Json to_json(const HurwitzConePoint& point);

Json to_json(const FixedConeReport& report);
Json to_json(const ScanResult& result, const Marking& order);
Json to_json(const IterationResult& result);

}  // namespace tropcorr
