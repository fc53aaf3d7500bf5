#include <doctest.h>

#include <random>

#include "support/corpus.hpp"
#include "support/util.hpp"
#include "tropcorr/json_io.hpp"

using namespace tropcorr;
using tctest::code_of;
using tctest::curve;
using tctest::letters;

TEST_SUITE("json") {
  TEST_CASE("trees and points round-trip") {
    std::mt19937_64 rng(61);
    enumerate_stable_trees(letters(6), {}, [&](const MarkedTree& t) {
      CHECK(tree_from_json(to_json(t)) == t);
      const ConePoint p = make_point(t, tctest::random_weights(rng, t.edge_count()));
      CHECK(cone_point_from_json(to_json(p)) == p);
      CHECK(cone_point_from_json(Json::parse(to_json(p).dump())) == p);
    });
  }

  TEST_CASE("split keys and label lists") {
    const Marking m = letters(5);
    CHECK(split_from_json(m, Json("a,b")) == split_from_json(m, Json::parse(R"(["c","d","e"])")));
    CHECK(split_json(m, split_from_json(m, Json("c,d,e"))) == Json::parse(R"(["a","b"])"));
  }

  TEST_CASE("covers round-trip through their input schema") {
    for (const auto& entry : tctest::make_corpus(62, 100)) {
      const Json out = to_json(entry.cover, entry.portrait);
      const CoverInput back = cover_from_json(out);
      CHECK(back.cover == entry.cover);
      CHECK(back.portrait == entry.portrait);
    }
  }

  TEST_CASE("cover input errors") {
    const Json good = Json::parse(R"js({"order":["a","b","c","d"],"degree":2,
      "perms":{"a":"(1 2)","b":"(1 2)","c":"id","d":"id"},
      "iota":{"a":"c#2","b":"d#2","c":"c#1","d":"d#1"}})js");
    cover_from_json(good);
    Json missing = good;
    missing["perms"].erase("d");
    CHECK(code_of([&] { cover_from_json(missing); }) == Errc::KeyMismatch);
    Json extra = good;
    extra["perms"]["z"] = "id";
    CHECK(code_of([&] { cover_from_json(extra); }) == Errc::BadLabel);
    Json no_degree = good;
    no_degree.erase("degree");
    CHECK(code_of([&] { cover_from_json(no_degree); }) == Errc::ParseError);
    Json bad_key = good;
    bad_key["iota"]["a"] = "c#7";
    CHECK(code_of([&] { cover_from_json(bad_key); }) == Errc::BadLabel);
  }

  TEST_CASE("types, matrices and certificates round-trip") {
    std::size_t certs = 0;
    for (const auto& entry : tctest::make_corpus(63, 100)) {
      for (const auto& gamma : enumerate_standard_multicurves(entry.cover.order(), 2)) {
        const CombinatorialType type = build_type(entry.cover, entry.portrait, gamma);
        const CombinatorialType back = type_from_json(Json::parse(to_json(type).dump()));
        CHECK(back.legs == type.legs);
        CHECK(back.t1 == type.t1);
        CHECK(back.vertices == type.vertices);
        CHECK(back.edges == type.edges);
        CHECK(back.leg_vertex == type.leg_vertex);
        const TltMatrix b = branch_matrix(type);
        CHECK(tlt_matrix_from_json(to_json(b)) == b);
        CHECK(multicurve_from_json(entry.cover.order(), to_json(gamma)) == gamma);
        const FixedConeReport r = fixed_cone_report(type, gamma);
        if (r.eigen) {
          ++certs;
          const EigenCertificate c = certificate_from_json(Json::parse(to_json(*r.eigen).dump()), r.branch.entries);
          CHECK(c.rational == r.eigen->rational);
          CHECK(c.charpoly == r.eigen->charpoly);
        }
      }
    }
    CHECK(certs > 0);
  }

  TEST_CASE("irrational certificates replay and tampering is caught") {
    const RationalMatrix fib{{1, 1}, {1, 0}};
    const EigenCertificate c = dominant_eigenvalue(fib);
    const Json j = to_json(c);
    CHECK(j["lambda"].is_null());
    const EigenCertificate back = certificate_from_json(j, fib);
    CHECK(back.eigvec_poly == c.eigvec_poly);
    Json bad = j;
    bad["isolating"]["lo"] = "3";
    bad["isolating"]["hi"] = "4";
    CHECK(code_of([&] { certificate_from_json(bad, fib); }) == Errc::Internal);
    const EigenCertificate two = dominant_eigenvalue({{2}});
    Json wrong = to_json(two);
    wrong["eigvec"] = Json::parse(R"(["0"])");
    CHECK(code_of([&] { certificate_from_json(wrong, {{2}}); }) == Errc::Internal);
  }

  TEST_CASE("weighted multicurves follow their blocks") {
    const Marking m = letters(6);
    const Json j = Json::parse(R"({"blocks":[["d","e"],["a","b"]],"weights":["3","1/2"]})");
    const WeightedMulticurve w = weighted_from_json(m, j);
    REQUIRE(w.curve.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string key = split_key(m, w.curve.blocks()[i].split);
      CHECK(w.weights[i] == (key == "a,b" ? Rational(1, 2) : Rational(3)));
    }
  }
}
