#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "support/corpus.hpp"
#include "support/util.hpp"
#include "tropcorr/tropical.hpp"

using namespace tropcorr;
using tctest::code_of;
using tctest::letters;
using tctest::q;
using tctest::split;

TEST_SUITE("tropical_moduli") {
  TEST_CASE("make_point") {
    const Marking m4 = letters(4), m5 = letters(5);
    const Split ab = split(m4, {"a", "b"});
    CHECK(make_curve(m4, {{ab, Rational(0)}}).is_cone_point());
    const ConePoint p = make_curve(m4, {{ab, Rational(3)}});
    CHECK(p.tree().edge_count() == 1);
    CHECK(p.length(ab) == 3);
    const ConePoint face = make_curve(m5, {{split(m5, {"a", "b"}), Rational(2)}, {split(m5, {"a", "b", "c"}), Rational(0)}});
    CHECK(face == make_curve(m5, {{split(m5, {"a", "b"}), Rational(2)}}));
    CHECK(code_of([&] { make_curve(m4, {{ab, Rational(-1)}}); }) == Errc::NegativeLength);
    const MarkedTree t = p.tree();
    CHECK(code_of([&] { make_point(t, std::map<Split, Rational>{{split(m4, {"a", "c"}), Rational(1)}}); }) ==
          Errc::KeyMismatch);
    CHECK(code_of([&] { make_point(t, std::vector<Rational>{1, 2}); }) == Errc::KeyMismatch);
  }

  TEST_CASE("forget_trop") {
    const Marking q5 = letters(5), q6 = letters(6), p4 = letters(4);
    const ConePoint x = make_curve(q5, {{split(q5, {"a", "b"}), Rational(4)}});
    CHECK(forget_trop(x, q5) == x);
    CHECK(forget_trop(make_curve(q5, {{split(q5, {"a", "e"}), Rational(5)}}), p4).is_cone_point());
    const ConePoint y = make_curve(q6, {{split(q6, {"a", "b"}), Rational(2)}, {split(q6, {"a", "b", "e"}), Rational(3)}});
    const ConePoint expected = make_curve(p4, {{split(p4, {"a", "b"}), Rational(5)}});
    CHECK(forget_trop(y, p4) == expected);
    CHECK(tctest::forget_by_distances(y, p4) == expected);
  }

  TEST_CASE("rays") {
    const Marking m4 = letters(4), m5 = letters(5);
    const ConePoint p = make_curve(m4, {{split(m4, {"a", "b"}), Rational(3)}});
    CHECK(ray_of(p).direction == make_curve(m4, {{split(m4, {"a", "b"}), Rational(1)}}));
    const ConePoint two = make_curve(m5, {{split(m5, {"a", "b"}), Rational(2)}, {split(m5, {"a", "b", "c"}), Rational(2)}});
    const Ray r = ray_of(two);
    for (const auto& c : r.direction.coords()) CHECK(c == q("1/2"));
    CHECK(code_of([&] { ray_of(cone_point(m4)); }) == Errc::ConePointHasNoRay);
  }

  TEST_CASE("property: forget_trop agrees with the leaf-distance oracle") {
    std::mt19937_64 rng(11);
    const Marking q7 = letters(7);
    const std::vector<Marking> subs{Marking({"a", "b", "c", "d"}), Marking({"b", "d", "e", "f", "g"}),
                                    Marking({"a", "c", "d", "e", "f", "g"})};
    std::size_t checked = 0;
    enumerate_stable_trees(q7, {}, [&](const MarkedTree& t) {
      if (std::uniform_int_distribution<int>(0, 15)(rng) != 0) return;
      const ConePoint x = make_point(t, tctest::random_weights(rng, t.edge_count()));
      for (const auto& sub : subs) CHECK(forget_trop(x, sub) == tctest::forget_by_distances(x, sub));
      ++checked;
    });
    CHECK(checked > 100);
  }

  TEST_CASE("property: rays have unit total length and scaling is linear") {
    std::mt19937_64 rng(12);
    enumerate_stable_trees(letters(6), {}, [&](const MarkedTree& t) {
      if (t.is_cone_point()) return;
      const ConePoint x = make_point(t, tctest::random_weights(rng, t.edge_count()));
      CHECK(ray_of(x).direction.total_length() == 1);
      CHECK(scale(ray_of(x).direction, x.total_length()) == x);
      CHECK(ray_of(scale(x, q("7/3"))) == ray_of(x));
    });
  }
}
