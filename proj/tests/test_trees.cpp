#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "support/corpus.hpp"
#include "support/util.hpp"
#include "tropcorr/errors.hpp"
#include "tropcorr/trees.hpp"
#include "tropcorr/tropical.hpp"

#include <set>

using namespace tropcorr;
using tctest::code_of;
using tctest::letters;

namespace {

MarkedTree tree_of(const Marking& m, std::vector<std::vector<std::string>> splits) {
  std::vector<Mask> sides;
  for (const auto& s : splits) sides.push_back(m.mask_of(s));
  return validate_split_system(m, sides);
}

std::vector<std::uint64_t> double_factorials = {1, 1, 3, 15, 105, 945};

}  // namespace

TEST_SUITE("trees") {
  TEST_CASE("split systems validate") {
    const Marking m = letters(4);
    CHECK(tree_of(m, {}).edge_count() == 0);
    const MarkedTree t = tree_of(m, {{"a", "b"}});
    CHECK(t.edge_count() == 1);
    CHECK(to_explicit_tree(t).vertices.size() == 2);
    CHECK(code_of([&] { tree_of(m, {{"a", "b"}, {"a", "c"}}); }) == Errc::IncompatibleSplits);
    CHECK(code_of([&] { tree_of(m, {{"a"}}); }) == Errc::TrivialSplit);
    CHECK(code_of([&] { tree_of(m, {{"a", "b", "c"}}); }) == Errc::TrivialSplit);
    CHECK(code_of([&] { m.index("z"); }) == Errc::BadLabel);
  }

  TEST_CASE("either side names the same split") {
    const Marking m = letters(5);
    CHECK(make_split(m, m.mask_of(std::vector<std::string>{"a", "b"})) ==
          make_split(m, m.mask_of(std::vector<std::string>{"c", "d", "e"})));
    CHECK(split_key(m, make_split(m, m.mask_of(std::vector<std::string>{"c", "d", "e"}))) == "a,b");
  }

  TEST_CASE("explicit trees") {
    const Marking m4 = letters(4);
    const ExplicitTree star = to_explicit_tree(one_vertex_tree(m4));
    REQUIRE(star.vertices.size() == 1);
    CHECK(star.vertices[0].valence == 4);
    const ExplicitTree one = to_explicit_tree(tree_of(m4, {{"a", "b"}}));
    CHECK(one.edges.size() == 1);
    CHECK(one.vertices[0].valence == 3);
    CHECK(one.vertices[1].valence == 3);
    const ExplicitTree path = to_explicit_tree(tree_of(letters(5), {{"a", "b"}, {"a", "b", "c"}}));
    REQUIRE(path.vertices.size() == 3);
    for (const auto& v : path.vertices) CHECK(v.valence == 3);
  }

  TEST_CASE("explicit trees reproduce their splits on every 5- and 6-leaf system") {
    for (std::size_t n : {5u, 6u}) {
      const Marking m = letters(n);
      enumerate_stable_trees(m, {}, [&](const MarkedTree& t) {
        const ExplicitTree e = to_explicit_tree(t);
        CHECK(e.edges.size() + 1 == e.vertices.size());
        std::vector<Split> found = edge_splits_by_search(e);
        std::sort(found.begin(), found.end());
        CHECK(found == t.splits());
        for (const auto& v : e.vertices) CHECK(v.valence >= 3);
      });
    }
  }

  TEST_CASE("enumeration counts") {
    CHECK(count_stable_trees(letters(4), {}) == std::vector<std::uint64_t>{1, 3});
    const auto c5 = count_stable_trees(letters(5), {});
    CHECK(c5[1] == 10);
    CHECK(c5[2] == 15);
    const auto c6 = count_stable_trees(letters(6), {});
    CHECK(c6[1] == 25);
    CHECK(c6[3] == 105);
    EnumerationOptions capped;
    capped.max_edges = 2;
    CHECK(count_stable_trees(letters(5), capped) == std::vector<std::uint64_t>{1, 10, 15});
    EnumerationOptions small;
    small.max_n = 5;
    CHECK(code_of([&] { count_stable_trees(letters(6), small); }) == Errc::SizeBound);
  }

  TEST_CASE("enumeration matches brute force and closed forms") {
    for (std::size_t n = 4; n <= 7; ++n) {
      const auto counts = count_stable_trees(letters(n), {});
      CHECK(counts[1] == (std::uint64_t{1} << (n - 1)) - n - 1);
      CHECK(counts[1] == tctest::brute_split_count(n));
      CHECK(counts.back() == double_factorials[n - 2]);
      if (n <= 6) CHECK(counts == tctest::brute_tree_counts(n, n - 3));
    }
  }

  TEST_CASE("enumeration visits each tree once") {
    std::set<std::vector<Split>> seen;
    std::size_t visits = 0;
    enumerate_stable_trees(letters(6), {}, [&](const MarkedTree& t) {
      seen.insert(t.splits());
      ++visits;
    });
    CHECK(seen.size() == visits);
  }

  TEST_CASE("contraction") {
    const Marking m = letters(5);
    const MarkedTree t = tree_of(m, {{"a", "b"}, {"a", "b", "c"}});
    CHECK(contract(t, {}) == t);
    CHECK(contract(t, t.splits()).is_cone_point());
    const std::vector<Split> ab{make_split(m, m.mask_of(std::vector<std::string>{"a", "b"}))};
    CHECK(contract(t, ab) == tree_of(m, {{"a", "b", "c"}}));
    const std::vector<Split> ac{make_split(m, m.mask_of(std::vector<std::string>{"a", "c"}))};
    CHECK(code_of([&] { contract(t, ac); }) == Errc::UnknownSplit);
  }

  TEST_CASE("is_contraction_of") {
    const Marking m = letters(5);
    const MarkedTree t = tree_of(m, {{"a", "b"}, {"a", "b", "c"}});
    CHECK(is_contraction_of(t, t));
    CHECK(is_contraction_of(one_vertex_tree(m), t));
    CHECK_FALSE(is_contraction_of(tree_of(m, {{"a", "c"}}), t));
    CHECK(code_of([&] { is_contraction_of(one_vertex_tree(letters(4)), t); }) == Errc::MarkingMismatch);
  }

  TEST_CASE("forget_pushforward") {
    const Marking q5 = letters(5), p4 = letters(4);
    const MarkedTree t = tree_of(q5, {{"a", "b"}});
    CHECK(forget_pushforward(t, q5) == t);
    CHECK(forget_pushforward(tree_of(q5, {{"a", "e"}}), p4).is_cone_point());
    const Marking q6 = letters(6);
    const MarkedTree two = tree_of(q6, {{"a", "b"}, {"a", "b", "e"}});
    CHECK(forget_pushforward(two, p4) == tree_of(p4, {{"a", "b"}}));
    CHECK(code_of([&] { forget_pushforward(t, Marking({"a", "b", "z"})); }) == Errc::BadSubmarking);
  }

  TEST_CASE("the crossing pair {a,b,e}, {a,b,f} is not a tree") {
    CHECK(code_of([&] { tree_of(letters(6), {{"a", "b", "e"}, {"a", "b", "f"}}); }) == Errc::IncompatibleSplits);
  }

  TEST_CASE("property: forgetting agrees with the tree-metric oracle") {
    std::mt19937_64 rng(7);
    const Marking q = letters(7);
    const Marking sub({"a", "c", "d", "f", "g"});
    std::size_t checked = 0;
    enumerate_stable_trees(q, {}, [&](const MarkedTree& t) {
      if (std::uniform_int_distribution<int>(0, 20)(rng) != 0) return;
      const std::vector<Rational> ones(t.edge_count(), Rational(1));
      const ConePoint oracle = tctest::forget_by_distances(make_point(t, ones), sub);
      CHECK(forget_pushforward(t, sub) == oracle.tree());
      ++checked;
    });
    CHECK(checked > 100);
  }

  TEST_CASE("serial and parallel counts agree") {
    for (std::size_t n = 4; n <= 8; ++n) {
      CHECK(count_stable_trees(letters(n), {}) == count_stable_trees_serial(letters(n), {}));
    }
  }
}
