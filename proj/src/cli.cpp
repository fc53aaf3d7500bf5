#include "tropcorr/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "tropcorr/dot.hpp"
#include "tropcorr/errors.hpp"
#include "tropcorr/json_io.hpp"

namespace tropcorr::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string inline_json;
  std::string format;  // empty: json, or dot for export dot
  std::optional<std::size_t> max_n;
  std::optional<int> max_degree;
  std::size_t max_blocks = 3;
  std::vector<std::string> braids;
  int workers = 0;
  std::uint64_t seed = 0;
  // command specific
  std::optional<std::size_t> n;
  std::vector<std::string> labels;
  std::optional<std::size_t> max_edges;
  bool list = false;
  std::size_t steps = 10;
};

struct Output {
  Json json;
  std::optional<std::string> dot;
  bool prefer_dot = false;
};

Json read_input(const RunConfig& cfg, std::istream& in) {
  std::string text;
  if (!cfg.inline_json.empty()) {
    text = cfg.inline_json;
  } else if (!cfg.input.empty() && cfg.input != "-") {
    std::ifstream file(cfg.input);
    if (!file) throw Error(Errc::ParseError, "cannot open input file '" + cfg.input + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  } else {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> word;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      word.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(Errc::BadGenerator, "braid generator '" + tok + "' is not an integer");
    }
  }
  return word;
}

const Json& need(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(Errc::ParseError, std::string("input lacks '") + key + "'");
  return doc.at(key);
}

StandardMulticurve multicurve_of(const CoverInput& c, const Json& doc) {
  return multicurve_from_json(c.cover.order(), need(doc, "multicurve"));
}

CombinatorialType type_of(const Json& doc) {
  if (doc.contains("type")) return type_from_json(doc.at("type"));
  const CoverInput c = cover_from_json(doc);
  return build_type(c.cover, c.portrait, multicurve_of(c, doc));
}

Json collatz_json(const EigenCertificate& cert, const RationalMatrix& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(1, 1000);
  Json probes = Json::array();
  for (int k = 0; k < 10; ++k) {
    RationalVector x(m.size());
    for (auto& v : x) v = draw(rng);
    const CollatzWielandt cw = collatz_wielandt(m, x);
    const bool contains = compare_root(cert, cw.lower) >= 0 && compare_root(cert, cw.upper) <= 0;
    probes.push_back(Json{{"lower", to_string(cw.lower)}, {"upper", to_string(cw.upper)}, {"contains", contains}});
  }
  return probes;
}

void attach_probes(Json& report, const FixedConeReport& r, std::uint64_t seed) {
  if (r.eigen) report["collatz_wielandt"] = collatz_json(*r.eigen, r.branch.entries, seed);
}

void check_bounds(const RunConfig& cfg, const MonodromyCover& cover) {
  if (cfg.max_n && cover.order().size() > *cfg.max_n) {
    throw Error(Errc::SizeBound, "input has " + std::to_string(cover.order().size()) + " marked points, above --max-n");
  }
  if (cfg.max_degree && cover.degree() > *cfg.max_degree) {
    throw Error(Errc::SizeBound, "input has degree " + std::to_string(cover.degree()) + ", above --max-degree");
  }
}

Marking default_marking(std::size_t n) {
  if (n > 26) throw Error(Errc::SizeBound, "default labels run a..z; pass --labels for larger markings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return Marking(std::move(labels));
}

using Handler = std::function<Output(const RunConfig&, std::istream&)>;

Output cmd_validate_cover(const RunConfig& cfg, std::istream& in) {
  const CoverInput c = cover_from_json(read_input(cfg, in));
  check_bounds(cfg, c.cover);
  return {Json{{"valid", true}, {"cover", to_json(c.cover, c.portrait)}}, {}};
}

Output cmd_orbifold(const RunConfig& cfg, std::istream& in) {
  const CoverInput c = cover_from_json(read_input(cfg, in));
  check_bounds(cfg, c.cover);
  return {to_json(orbifold_signature(c.cover, c.portrait), c.cover.order()), {}};
}

Output cmd_trees_enumerate(const RunConfig& cfg, std::istream&) {
  Marking marking;
  if (!cfg.labels.empty()) {
    marking = Marking(cfg.labels);
  } else if (cfg.n) {
    marking = default_marking(*cfg.n);
  } else {
    throw Error(Errc::ParseError, "trees enumerate needs --n or --labels");
  }
  EnumerationOptions options;
  if (cfg.max_edges) options.max_edges = *cfg.max_edges;
  if (cfg.max_n) options.max_n = *cfg.max_n;
  const auto counts = count_stable_trees(marking, options);
  Json c = Json::object();
  for (std::size_t k = 0; k < counts.size(); ++k) c[std::to_string(k)] = counts[k];
  Json out{{"marking", to_json(marking)}, {"counts", c}};
  if (cfg.list) {
    Json trees = Json::array();
    enumerate_stable_trees(marking, options, [&](const MarkedTree& t) { trees.push_back(to_json(t)["splits"]); });
    out["trees"] = trees;
  }
  return {out, {}};
}

Output cmd_pullback(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CoverInput c = cover_from_json(doc);
  check_bounds(cfg, c.cover);
  const PullbackResult r = pullback_tree(c.cover, c.portrait, multicurve_of(c, doc));
  return {to_json(r), dot_tree(r.upstairs_tree)};
}

Output cmd_tlt(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CoverInput c = cover_from_json(doc);
  check_bounds(cfg, c.cover);
  const StandardMulticurve gamma = multicurve_of(c, doc);
  const PullbackResult r = pullback_tree(c.cover, c.portrait, gamma);
  const StabilityResult s = stability_and_eigenvalue(c.cover, c.portrait, gamma);
  Json image = Json::array();
  for (Split x : s.image) image.push_back(split_json(c.cover.order(), x));
  Json stab{{"stable", s.stable}, {"image", image}, {"obstruction", s.obstruction}};
  stab["matrix"] = s.matrix ? to_json(*s.matrix) : Json(nullptr);
  stab["eigen"] = s.eigen ? to_json(*s.eigen) : Json(nullptr);
  if (s.eigen && s.matrix) stab["collatz_wielandt"] = collatz_json(*s.eigen, s.matrix->entries, cfg.seed);
  return {Json{{"tlt_tilde", to_json(tlt_tilde_matrix(r))}, {"tlt", to_json(tlt_matrix(r))}, {"stability", stab}}, {}};
}

Output cmd_type_build(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CoverInput c = cover_from_json(doc);
  check_bounds(cfg, c.cover);
  const CombinatorialType type = build_type(c.cover, c.portrait, multicurve_of(c, doc));
  return {to_json(type), dot_type(type)};
}

Output cmd_type_validate(const RunConfig& cfg, std::istream& in) {
  const CombinatorialType type = type_of(read_input(cfg, in));
  validate_type(type);
  return {Json{{"valid", true}, {"edges", type.edges.size()}}, dot_type(type)};
}

Output cmd_type_contract(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CombinatorialType type = type_of(doc);
  std::vector<Split> edges;
  for (const auto& e : need(doc, "edges")) edges.push_back(split_from_json(type.legs.order, e));
  const CombinatorialType out = contract_type(type, edges);
  return {to_json(out), dot_type(out)};
}

HurwitzConePoint hurwitz_point_of(const Json& doc) {
  CombinatorialType type = type_of(doc);
  std::map<Split, Rational> keyed;
  for (const auto& [key, value] : need(doc, "coords").items()) {
    const Rational r = value.is_number_integer() ? Rational(value.get<long>()) : parse_rational(value.get<std::string>());
    if (!keyed.emplace(split_from_json(type.legs.order, Json(key)), r).second) {
      throw Error(Errc::KeyMismatch, "coordinate for {" + key + "} given twice");
    }
  }
  std::vector<Rational> coords;
  for (Split s : type.t1.splits()) {
    auto it = keyed.find(s);
    if (it == keyed.end()) throw Error(Errc::KeyMismatch, "no coordinate for {" + split_key(type.legs.order, s) + "}");
    coords.push_back(it->second);
    keyed.erase(it);
  }
  if (!keyed.empty()) {
    throw Error(Errc::KeyMismatch, "coordinate {" + split_key(type.legs.order, keyed.begin()->first) + "} is not an edge of T1");
  }
  return make_hurwitz_point(std::move(type), std::move(coords));
}

Output cmd_project_pi1(const RunConfig& cfg, std::istream& in) {
  const ConePoint p = pi1_trop(hurwitz_point_of(read_input(cfg, in)));
  return {to_json(p), dot_curve(p)};
}

Output cmd_project_pi2(const RunConfig& cfg, std::istream& in) {
  const HurwitzConePoint h = hurwitz_point_of(read_input(cfg, in));
  const ConePoint p = pi2_trop(h);
  return {Json{{"pi2", to_json(p)}, {"pi2_tilde", to_json(pi2_tilde_trop(h))}}, dot_curve(p)};
}

WeightedMulticurve weighted_of(const CoverInput& c, const Json& doc) {
  return weighted_from_json(c.cover.order(), need(doc, "multicurve"));
}

Output cmd_nu(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CoverInput c = cover_from_json(doc);
  check_bounds(cfg, c.cover);
  const HurwitzConePoint h = nu_trop(c.cover, c.portrait, weighted_of(c, doc));
  return {to_json(h), dot_type(h.type)};
}

Output cmd_branch_matrix(const RunConfig& cfg, std::istream& in) {
  return {to_json(branch_matrix(type_of(read_input(cfg, in)))), {}};
}

Output cmd_fixed_report(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  FixedConeReport r;
  if (doc.contains("type")) {
    r = fixed_cone_report(type_from_json(doc.at("type")));
  } else {
    const CoverInput c = cover_from_json(doc);
    check_bounds(cfg, c.cover);
    const StandardMulticurve gamma = multicurve_of(c, doc);
    r = fixed_cone_report(build_type(c.cover, c.portrait, gamma), gamma);
  }
  Json j = to_json(r);
  attach_probes(j, r, cfg.seed);
  return {j, dot_type(r.type)};
}

Output cmd_scan(const RunConfig& cfg, std::istream& in) {
  const CoverInput c = cover_from_json(read_input(cfg, in));
  ScanOptions options;
  options.max_blocks = cfg.max_blocks;
  if (cfg.max_n) options.max_n = *cfg.max_n;
  if (cfg.max_degree) options.max_degree = *cfg.max_degree;
  for (const auto& w : cfg.braids) options.braid_words.push_back(parse_word(w));
  const ScanResult result = scan_obstructions(c.cover, c.portrait, options);
  Json j = to_json(result, c.cover.order());
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    attach_probes(j["entries"][i]["report"], result.entries[i].report, cfg.seed + i);
  }
  return {j, {}};
}

Output cmd_iterate(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CoverInput c = cover_from_json(doc);
  check_bounds(cfg, c.cover);
  return {to_json(iterate_pullback(c.cover, c.portrait, weighted_of(c, doc), cfg.steps)), {}};
}

Output cmd_oracle(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  const CoverInput c = cover_from_json(doc);
  OracleOptions options;
  if (cfg.max_n) options.max_n = *cfg.max_n;
  if (cfg.max_degree) options.max_degree = *cfg.max_degree;
  const MarkedTree t1 = splits_from_json(c.cover.order(), need(doc, "t1"));
  Json types = Json::array();
  for (const auto& t : enumerate_profile_types_oracle(c.cover, c.portrait, t1, options)) types.push_back(to_json(t));
  return {Json{{"count", types.size()}, {"types", types}}, {}};
}

Output cmd_export_dot(const RunConfig& cfg, std::istream& in) {
  const Json doc = read_input(cfg, in);
  std::string text;
  if (doc.contains("type") || doc.contains("multicurve")) {
    text = dot_type(type_of(doc));
  } else if (doc.contains("coords")) {
    text = dot_curve(cone_point_from_json(doc));
  } else if (doc.contains("splits")) {
    text = dot_tree(tree_from_json(doc));
  } else {
    throw Error(Errc::ParseError, "export dot expects a tree, a point, a type, or a cover with a multicurve");
  }
  return {Json{{"dot", text}}, text, true};
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

int exit_for(Errc code) {
  switch (code) {
    case Errc::SizeBound: return kSizeBound;
    case Errc::Internal: return kInternal;
    default: return kValidation;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Tropical moduli correspondences of branched covers", "tropcorr"};
  app.require_subcommand(1);

  Handler chosen;
  auto common = [&](CLI::App* sub, Handler h) {
    sub->add_option("--input", cfg.input, "Input JSON file ('-' for stdin)");
    sub->add_option("--json", cfg.inline_json, "Inline input JSON");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table", "dot"}));
    sub->add_option("--max-n", cfg.max_n, "Bound on marked points");
    sub->add_option("--max-degree", cfg.max_degree, "Bound on the degree");
    sub->add_option("--max-blocks", cfg.max_blocks, "Curves per multicurve in scans");
    sub->add_option("--braid", cfg.braids, "Braid word such as 1,-2 (repeatable)");
    sub->add_option("--workers", cfg.workers, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", cfg.seed, "Seed for the Collatz-Wielandt probes");
    sub->callback([&chosen, h] { chosen = h; });
    return sub;
  };

  common(app.add_subcommand("validate-cover", "Validate a cover and portrait"), cmd_validate_cover);
  common(app.add_subcommand("orbifold", "Orbifold signature"), cmd_orbifold);
  auto* trees = app.add_subcommand("trees", "Stable trees")->require_subcommand(1);
  auto* tenum = common(trees->add_subcommand("enumerate", "Count stable trees by edge number"), cmd_trees_enumerate);
  tenum->add_option("--n", cfg.n, "Number of labels (a, b, c, ...)");
  tenum->add_option("--labels", cfg.labels, "Explicit labels");
  tenum->add_option("--max-edges", cfg.max_edges, "Largest edge count");
  tenum->add_flag("--list", cfg.list, "Also list the trees");
  common(app.add_subcommand("pullback", "Pull back a standard multicurve"), cmd_pullback);
  common(app.add_subcommand("tlt", "Thurston linear transformations"), cmd_tlt);
  auto* type = app.add_subcommand("type", "Combinatorial types")->require_subcommand(1);
  common(type->add_subcommand("build", "Type of a multicurve"), cmd_type_build);
  common(type->add_subcommand("validate", "Check a type"), cmd_type_validate);
  common(type->add_subcommand("contract", "Contract T1 edges"), cmd_type_contract);
  auto* project = app.add_subcommand("project", "Projections of a Hurwitz cone point")->require_subcommand(1);
  common(project->add_subcommand("pi1", "Source-curve projection"), cmd_project_pi1);
  common(project->add_subcommand("pi2", "Target-curve projection"), cmd_project_pi2);
  common(app.add_subcommand("nu", "Hurwitz point of a weighted multicurve"), cmd_nu);
  common(app.add_subcommand("branch-matrix", "Branch matrix of a type"), cmd_branch_matrix);
  common(app.add_subcommand("fixed-report", "Weakly fixed cone report"), cmd_fixed_report);
  common(app.add_subcommand("scan", "Scan standard multicurves for obstructions"), cmd_scan);
  auto* iter = common(app.add_subcommand("iterate", "Iterate the pullback on a weighted multicurve"), cmd_iterate);
  iter->add_option("--steps", cfg.steps, "Number of steps");
  auto* oracle = app.add_subcommand("oracle", "Brute-force realizability")->require_subcommand(1);
  common(oracle->add_subcommand("enumerate-types", "All realizable types over T1"), cmd_oracle);
  auto* exp = app.add_subcommand("export", "Exports")->require_subcommand(1);
  common(exp->add_subcommand("dot", "Graphviz text"), cmd_export_dot);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
  try {
    const Output result = chosen(cfg, in);
    const std::string format = !cfg.format.empty() ? cfg.format : result.prefer_dot ? "dot" : "json";
    if (format == "dot") {
      if (!result.dot) throw Error(Errc::ParseError, "this command has no DOT output");
      out << *result.dot;
    } else if (format == "table") {
      flatten(result.json, "", out);
    } else {
      out << result.json.dump(2) << '\n';
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.code());
  } catch (const Json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace tropcorr::cli
