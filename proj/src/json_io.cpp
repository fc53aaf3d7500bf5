#include "tropcorr/json_io.hpp"

#include <map>

#include "tropcorr/errors.hpp"

namespace tropcorr {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw Error(Errc::ParseError, std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw Error(Errc::ParseError, std::string("missing field '") + name + "'");
  return *it;
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw Error(Errc::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(Errc::ParseError, std::string(what) + " must be an integer");
  return j.get<long>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::ParseError, std::string(what) + " must be an array");
  return j;
}

Rational rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(text(j, "rational"));
}

Json vector_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

RationalVector vector_from_json(const Json& j) {
  RationalVector v;
  for (const auto& x : array(j, "vector")) v.push_back(rational(x));
  return v;
}

Json sheets_json(const std::vector<int>& sheets) {
  Json out = Json::array();
  for (int s : sheets) out.push_back(s + 1);
  return out;
}

Json interval_json(const Interval& iv) { return Json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}}; }

Interval interval_from_json(const Json& j) { return {rational(field(j, "lo")), rational(field(j, "hi"))}; }

}  // namespace

Json to_json(const Marking& marking) { return Json(marking.labels()); }

Marking marking_from_json(const Json& j) {
  std::vector<std::string> labels;
  for (const auto& x : array(j, "marking")) labels.push_back(text(x, "label"));
  return Marking(std::move(labels));
}

Json split_json(const Marking& marking, Split s) { return Json(marking.names(s.side)); }

Split split_from_json(const Marking& marking, const Json& j) {
  std::vector<std::string> labels;
  if (j.is_string()) {
    // "a,b" form
    std::string key = j.get<std::string>();
    std::size_t start = 0;
    while (start <= key.size()) {
      const std::size_t comma = key.find(',', start);
      labels.push_back(key.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    for (const auto& x : array(j, "split")) labels.push_back(text(x, "label"));
  }
  return parse_split(marking, labels);
}

Json to_json(const MarkedTree& tree) {
  Json splits = Json::array();
  for (Split s : tree.splits()) splits.push_back(split_json(tree.marking(), s));
  return Json{{"marking", to_json(tree.marking())}, {"splits", splits}};
}

MarkedTree splits_from_json(const Marking& marking, const Json& splits) {
  std::vector<Mask> sides;
  for (const auto& s : array(splits, "splits")) sides.push_back(split_from_json(marking, s).side);
  return validate_split_system(marking, std::move(sides));
}

MarkedTree tree_from_json(const Json& j) {
  const Marking marking = marking_from_json(field(j, "marking"));
  return splits_from_json(marking, field(j, "splits"));
}

Json to_json(const ConePoint& point) {
  Json tree = Json::array();
  Json coords = Json::object();
  for (std::size_t i = 0; i < point.tree().edge_count(); ++i) {
    const Split s = point.tree().splits()[i];
    tree.push_back(split_json(point.marking(), s));
    coords[split_key(point.marking(), s)] = to_string(point.coords()[i]);
  }
  return Json{{"marking", to_json(point.marking())}, {"tree", tree}, {"coords", coords}};
}

ConePoint cone_point_from_json(const Json& j) {
  const Marking marking = marking_from_json(field(j, "marking"));
  const MarkedTree tree = splits_from_json(marking, field(j, "tree"));
  std::map<Split, Rational> coords;
  for (const auto& [key, value] : field(j, "coords").items()) coords[split_from_json(marking, Json(key))] = rational(value);
  return make_point(tree, coords);
}

Json to_json(const Ray& ray) { return to_json(ray.direction); }

CoverInput cover_from_json(const Json& j) {
  const Marking order = marking_from_json(field(j, "order"));
  const long degree = integer(field(j, "degree"), "degree");
  if (degree < 1 || degree > 64) throw Error(Errc::DegreeTooSmall, "degree must lie in 1..64");
  const Json& perms = field(j, "perms");
  std::vector<Perm> tuple;
  for (const auto& label : order.labels()) {
    auto it = perms.find(label);
    if (it == perms.end()) throw Error(Errc::KeyMismatch, "no permutation given for '" + label + "'");
    tuple.push_back(parse_cycles(text(*it, "permutation"), static_cast<int>(degree)));
  }
  for (const auto& [label, _] : perms.items()) order.index(label);
  CoverOptions options;
  if (auto it = j.find("allow_degree_one"); it != j.end()) options.allow_degree_one = it->get<bool>();
  CoverInput in{validate_cover(order, static_cast<int>(degree), std::move(tuple), options), {}};
  const Json& iota = field(j, "iota");
  std::vector<std::string> keys;
  for (const auto& label : order.labels()) {
    auto it = iota.find(label);
    if (it == iota.end()) throw Error(Errc::NotInjective, "portrait does not assign '" + label + "'");
    keys.push_back(text(*it, "preimage key"));
  }
  for (const auto& [label, _] : iota.items()) order.index(label);
  in.portrait = validate_portrait(in.cover, keys);
  return in;
}

Json to_json(const MonodromyCover& cover, const DynamicalPortrait& portrait) {
  const Marking& order = cover.order();
  Json perms = Json::object(), iota = Json::object(), step = Json::object(), pre = Json::array();
  for (std::size_t i = 0; i < order.size(); ++i) {
    perms[order.label(i)] = to_cycle_string(cover.perm(i));
    iota[order.label(i)] = cover.preimages()[portrait.iota[i]].key;
    step[order.label(i)] = order.label(portrait.step[i]);
  }
  for (const auto& q : cover.preimages()) {
    pre.push_back(Json{{"key", q.key}, {"base", order.label(q.base)}, {"degree", q.local_degree}, {"cycle", sheets_json(q.cycle)}});
  }
  return Json{{"order", to_json(order)}, {"degree", cover.degree()}, {"perms", perms},
              {"iota", iota}, {"step", step}, {"preimages", pre}};
}

Json to_json(const OrbifoldSignature& sig, const Marking& order) {
  Json nu = Json::object();
  for (std::size_t i = 0; i < order.size(); ++i) {
    nu[order.label(i)] = sig.nu[i] ? std::to_string(*sig.nu[i]) : std::string("inf");
  }
  return Json{{"nu", nu}, {"euler_sum", to_string(sig.euler_sum)}, {"hyperbolic", sig.hyperbolic}};
}

StandardMulticurve multicurve_from_json(const Marking& order, const Json& j) {
  std::vector<Mask> blocks;
  for (const auto& b : array(field(j, "blocks"), "blocks")) {
    std::vector<std::string> labels;
    for (const auto& x : array(b, "block")) labels.push_back(text(x, "label"));
    blocks.push_back(order.mask_of(labels));
  }
  return validate_multicurve(order, blocks);
}

WeightedMulticurve weighted_from_json(const Marking& order, const Json& j) {
  // Weights follow the blocks as written; reorder onto the canonical order.
  const Json& blocks = array(field(j, "blocks"), "blocks");
  const Json& weights = array(field(j, "weights"), "weights");
  if (blocks.size() != weights.size()) throw Error(Errc::KeyMismatch, "one weight per block is required");
  StandardMulticurve gamma = multicurve_from_json(order, j);
  std::vector<Rational> aligned(gamma.size());
  std::vector<char> seen(gamma.size(), 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::vector<std::string> labels;
    for (const auto& x : blocks[i]) labels.push_back(x.get<std::string>());
    const Split s = make_split(order, order.mask_of(labels));
    const std::size_t k = *gamma.dual_tree().index_of(s);
    if (seen[k]) throw Error(Errc::KeyMismatch, "curve {" + split_key(order, s) + "} weighted twice");
    seen[k] = 1;
    aligned[k] = rational(weights[i]);
  }
  return make_weighted(std::move(gamma), std::move(aligned));
}

Json to_json(const StandardMulticurve& gamma) {
  Json blocks = Json::array();
  for (const auto& b : gamma.blocks()) blocks.push_back(split_json(gamma.order(), b.split));
  return Json{{"order", to_json(gamma.order())}, {"blocks", blocks}};
}

Json to_json(const PullbackResult& r) {
  const Marking& marks = r.cover.preimage_marking();
  Json vertices = Json::array(), edges = Json::array();
  for (const auto& v : r.vertices) {
    Json legs = Json::array();
    for (std::size_t q : v.legs) legs.push_back(marks.label(q));
    vertices.push_back(Json{{"region", v.region}, {"sheets", sheets_json(v.sheets)}, {"legs", legs}});
  }
  for (const auto& e : r.edges) {
    edges.push_back(Json{{"block", split_json(r.gamma.order(), r.gamma.blocks()[e.block].split)},
                         {"cycle", sheets_json(e.cycle)},
                         {"degree", e.degree},
                         {"inner", e.inner},
                         {"outer", e.outer},
                         {"split", split_json(marks, e.split)}});
  }
  return Json{{"multicurve", to_json(r.gamma)},
              {"vertices", vertices},
              {"edges", edges},
              {"upstairs_tree", to_json(r.upstairs_tree)}};
}

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(vector_json(row));
  return rows;
}

RationalMatrix matrix_from_json(const Json& j) {
  RationalMatrix m;
  for (const auto& row : array(j, "matrix")) m.push_back(vector_from_json(row));
  return m;
}

Json to_json(const TltMatrix& m) {
  Json rows = Json::array(), cols = Json::array();
  for (Split s : m.rows) rows.push_back(split_json(m.row_marking, s));
  for (Split s : m.cols) cols.push_back(split_json(m.col_marking, s));
  return Json{{"row_marking", to_json(m.row_marking)},
              {"rows", rows},
              {"col_marking", to_json(m.col_marking)},
              {"cols", cols},
              {"entries", matrix_json(m.entries)}};
}

TltMatrix tlt_matrix_from_json(const Json& j) {
  TltMatrix m;
  m.row_marking = marking_from_json(field(j, "row_marking"));
  m.col_marking = marking_from_json(field(j, "col_marking"));
  for (const auto& s : array(field(j, "rows"), "rows")) m.rows.push_back(split_from_json(m.row_marking, s));
  for (const auto& s : array(field(j, "cols"), "cols")) m.cols.push_back(split_from_json(m.col_marking, s));
  m.entries = matrix_from_json(field(j, "entries"));
  return m;
}

Json to_json(const Polynomial& p) { return vector_json(p.coeffs()); }

Polynomial polynomial_from_json(const Json& j) { return Polynomial(vector_from_json(j)); }

Json to_json(const Interval& iv) { return interval_json(iv); }

Json to_json(const EigenCertificate& c) {
  Json j{{"charpoly", to_json(c.charpoly)},
         {"charpoly_text", to_string(c.charpoly)},
         {"factor", to_json(c.factor)},
         {"isolating", interval_json(c.isolating)},
         {"compare_to_one", c.compare_to_one},
         {"approx", c.approx}};
  if (c.rational) {
    j["lambda"] = to_string(*c.rational);
    j["eigvec"] = vector_json(c.eigvec);
  } else {
    j["lambda"] = nullptr;
    Json polys = Json::array(), boxes = Json::array();
    for (const auto& p : c.eigvec_poly) polys.push_back(to_json(p));
    for (const auto& b : c.eigvec_enclosure) boxes.push_back(interval_json(b));
    j["eigvec_poly"] = polys;
    j["eigvec_enclosure"] = boxes;
  }
  return j;
}

EigenCertificate certificate_from_json(const Json& j, const RationalMatrix& m) {
  EigenCertificate c;
  c.charpoly = polynomial_from_json(field(j, "charpoly"));
  c.factor = polynomial_from_json(field(j, "factor"));
  c.isolating = interval_from_json(field(j, "isolating"));
  c.compare_to_one = static_cast<int>(integer(field(j, "compare_to_one"), "compare_to_one"));
  c.approx = field(j, "approx").get<double>();
  const Json& lambda = field(j, "lambda");
  if (!lambda.is_null()) {
    c.rational = rational(lambda);
    c.eigvec = vector_from_json(field(j, "eigvec"));
  } else {
    for (const auto& p : array(field(j, "eigvec_poly"), "eigvec_poly")) c.eigvec_poly.push_back(polynomial_from_json(p));
    for (const auto& b : array(field(j, "eigvec_enclosure"), "eigvec_enclosure")) {
      c.eigvec_enclosure.push_back(interval_from_json(b));
    }
  }
  verify_certificate(m, c);
  return c;
}

Json to_json(const EigenCone& cone) {
  Json basis = Json::array(), rays = Json::array();
  for (const auto& v : cone.basis) basis.push_back(vector_json(v));
  for (const auto& v : cone.rays) rays.push_back(vector_json(v));
  return Json{{"basis", basis}, {"rays", rays}, {"dimension", cone.dimension}};
}

Json to_json(const CombinatorialType& type) {
  const LegData& L = type.legs;
  Json leg_map = Json::array(), iota = Json::object(), vertices = Json::array(), edges = Json::array();
  for (std::size_t q : L.leg_map) leg_map.push_back(L.order.label(q));
  for (std::size_t p = 0; p < L.order.size(); ++p) iota[L.order.label(p)] = L.preimage_marking.label(L.iota[p]);
  for (const auto& v : type.vertices) vertices.push_back(Json{{"image", v.image}, {"degree", v.degree}});
  for (const auto& e : type.edges) {
    edges.push_back(Json{{"inner", e.inner},
                         {"outer", e.outer},
                         {"image", split_json(L.order, type.t1.splits().at(e.image))},
                         {"degree", e.degree}});
  }
  Json t1 = Json::array();
  for (Split s : type.t1.splits()) t1.push_back(split_json(L.order, s));
  return Json{{"legs",
               {{"order", to_json(L.order)},
                {"preimages", to_json(L.preimage_marking)},
                {"leg_map", leg_map},
                {"leg_degree", L.leg_degree},
                {"iota", iota},
                {"degree", L.degree}}},
              {"t1", t1},
              {"vertices", vertices},
              {"edges", edges},
              {"leg_vertex", type.leg_vertex},
              {"lcmdeg", lcmdeg(type)}};
}

CombinatorialType type_from_json(const Json& j) {
  CombinatorialType type;
  const Json& legs = field(j, "legs");
  LegData& L = type.legs;
  L.order = marking_from_json(field(legs, "order"));
  L.preimage_marking = marking_from_json(field(legs, "preimages"));
  for (const auto& x : array(field(legs, "leg_map"), "leg_map")) L.leg_map.push_back(L.order.index(text(x, "label")));
  for (const auto& x : array(field(legs, "leg_degree"), "leg_degree")) {
    L.leg_degree.push_back(static_cast<int>(integer(x, "leg degree")));
  }
  const Json& iota = field(legs, "iota");
  for (const auto& label : L.order.labels()) {
    auto it = iota.find(label);
    if (it == iota.end()) throw Error(Errc::KeyMismatch, "iota does not assign '" + label + "'");
    L.iota.push_back(L.preimage_marking.index(text(*it, "preimage key")));
  }
  L.degree = static_cast<int>(integer(field(legs, "degree"), "degree"));
  type.t1 = splits_from_json(L.order, field(j, "t1"));
  for (const auto& v : array(field(j, "vertices"), "vertices")) {
    type.vertices.push_back(TypeVertex{static_cast<std::size_t>(integer(field(v, "image"), "image")),
                                       static_cast<int>(integer(field(v, "degree"), "degree"))});
  }
  for (const auto& e : array(field(j, "edges"), "edges")) {
    const Split s = split_from_json(L.order, field(e, "image"));
    auto idx = type.t1.index_of(s);
    if (!idx) throw Error(Errc::UnknownEdge, "edge image {" + split_key(L.order, s) + "} is not in T1");
    type.edges.push_back(TypeEdge{static_cast<std::size_t>(integer(field(e, "inner"), "inner")),
                                  static_cast<std::size_t>(integer(field(e, "outer"), "outer")), *idx,
                                  static_cast<int>(integer(field(e, "degree"), "degree"))});
  }
  for (const auto& x : array(field(j, "leg_vertex"), "leg_vertex")) {
    type.leg_vertex.push_back(static_cast<std::size_t>(integer(x, "leg vertex")));
  }
  return type;
}

Json to_json(const HurwitzConePoint& point) {
  Json coords = Json::object();
  for (std::size_t i = 0; i < point.coords.size(); ++i) {
    coords[split_key(point.type.legs.order, point.type.t1.splits()[i])] = to_string(point.coords[i]);
  }
  return Json{{"type", to_json(point.type)}, {"coords", coords}};
}

Json to_json(const FixedConeReport& r) {
  Json rays = Json::array();
  for (const auto& ray : r.fixed_rays) rays.push_back(to_json(ray));
  Json j{{"type", to_json(r.type)},
         {"weakly_fixed", r.weakly_fixed},
         {"branch_matrix", to_json(r.branch)},
         {"fixed_rays", rays},
         {"obstruction", r.obstruction},
         {"disclaimer", r.disclaimer}};
  j["multicurve"] = r.gamma ? to_json(*r.gamma) : Json(nullptr);
  j["eigen"] = r.eigen ? to_json(*r.eigen) : Json(nullptr);
  j["eigencone"] = r.eigencone ? to_json(*r.eigencone) : Json(nullptr);
  j["lambda"] = (r.eigen && r.eigen->rational) ? Json(to_string(*r.eigen->rational)) : Json(nullptr);
  return j;
}

Json to_json(const ScanResult& result, const Marking& order) {
  Json entries = Json::array();
  std::size_t obstructions = 0;
  for (const auto& e : result.entries) {
    obstructions += e.report.obstruction ? 1 : 0;
    entries.push_back(Json{{"word", e.word}, {"report", to_json(e.report)}});
  }
  Json sig = to_json(result.signature, order);
  return Json{{"signature", sig},
              {"parabolic_warning", result.parabolic_warning},
              {"multicurves_examined", result.multicurves_examined},
              {"obstructions", obstructions},
              {"entries", entries}};
}

Json to_json(const IterationResult& result) {
  Json trace = Json::array();
  for (const auto& p : result.trace) trace.push_back(to_json(p));
  return Json{{"status", std::string(status_name(result.status))}, {"trace", trace}};
}

}  // namespace tropcorr
