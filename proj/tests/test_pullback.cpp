#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "oracles/oracles.hpp"
#include "support/corpus.hpp"
#include "support/util.hpp"
#include "tropcorr/pullback.hpp"

using namespace tropcorr;
using tctest::code_of;
using tctest::curve;
using tctest::letters;
using tctest::q;
using tctest::split;

namespace {

struct Fixture {
  MonodromyCover cover = tctest::cover_l();
  DynamicalPortrait portrait = tctest::cover_l_portrait(cover);
  PullbackResult pull(std::vector<std::vector<std::string>> blocks) const {
    return pullback_tree(cover, portrait, curve(cover.order(), blocks));
  }
};

// Standard multicurves counted by brute force over subsets of cyclic intervals.
std::size_t brute_multicurve_count(std::size_t n, std::size_t max_blocks) {
  const Marking m = letters(n);
  std::set<Mask> blocks;
  for (std::size_t start = 0; start < n; ++start) {
    for (std::size_t len = 2; len + 2 <= n; ++len) {
      Mask side = 0;
      for (std::size_t k = 0; k < len; ++k) side |= bit((start + k) % n);
      blocks.insert(make_split(m, side).side);
    }
  }
  const std::vector<Mask> all(blocks.begin(), blocks.end());
  std::size_t total = 0;
  for (std::size_t k = 0; k <= max_blocks && k <= all.size(); ++k) {
    std::vector<char> pick(all.size(), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), 1);
    do {
      std::vector<Mask> c;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (pick[i]) c.push_back(all[i]);
      }
      bool ok = true;
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) ok = ok && compatible(Split{c[i]}, Split{c[j]});
      }
      total += ok ? 1 : 0;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return total;
}

}  // namespace

TEST_SUITE("pullback") {
  TEST_CASE("standard multicurves") {
    const Marking m = letters(4);
    const StandardMulticurve empty = curve(m, {});
    CHECK(empty.empty());
    CHECK(empty.dual_tree().is_cone_point());
    const StandardMulticurve ab = curve(m, {{"a", "b"}});
    CHECK(ab.dual_tree().splits() == std::vector<Split>{split(m, {"a", "b"})});
    CHECK(code_of([&] { curve(m, {{"a", "b"}, {"b", "c"}}); }) == Errc::NotLaminar);
    CHECK(code_of([&] { curve(m, {{"a", "c"}}); }) == Errc::NotConsecutive);
    CHECK(code_of([&] { curve(m, {{"a"}}); }) == Errc::TrivialBlock);
    CHECK(curve(m, {{"a", "b"}, {"c", "d"}}).size() == 1);
  }

  TEST_CASE("multicurve enumeration matches brute force") {
    for (std::size_t n = 4; n <= 7; ++n) {
      for (std::size_t k = 0; k <= 3; ++k) {
        CHECK(enumerate_standard_multicurves(letters(n), k).size() == brute_multicurve_count(n, k));
      }
    }
    CHECK(enumerate_standard_multicurves(letters(5), 0).size() == 1);
  }

  TEST_CASE("pullback of COVER-L") {
    const Fixture f;
    const PullbackResult cd = f.pull({{"c", "d"}});
    CHECK(cd.vertices.size() == 3);
    REQUIRE(cd.edges.size() == 2);
    const Marking& up = f.cover.preimage_marking();
    std::set<Split> sides;
    for (const auto& e : cd.edges) {
      CHECK(e.degree == 1);
      sides.insert(e.split);
    }
    CHECK(sides == std::set<Split>{split(up, {"c#1", "d#1"}), split(up, {"c#2", "d#2"})});

    const PullbackResult bc = f.pull({{"b", "c"}});
    CHECK(bc.vertices.size() == 2);
    REQUIRE(bc.edges.size() == 1);
    CHECK(bc.edges[0].degree == 2);

    const PullbackResult none = f.pull({});
    CHECK(none.vertices.size() == 1);
    CHECK(none.vertices[0].legs.size() == 6);
    CHECK(none.upstairs_tree.is_cone_point());
  }

  TEST_CASE("TLT matrices of COVER-L") {
    const Fixture f;
    const Marking& m = f.cover.order();
    const TltMatrix cd_tilde = tlt_tilde_matrix(f.pull({{"c", "d"}}));
    CHECK(cd_tilde.rows.size() == 2);
    for (const auto& row : cd_tilde.entries) CHECK(row == RationalVector{1});
    const TltMatrix bc_tilde = tlt_tilde_matrix(f.pull({{"b", "c"}}));
    CHECK(bc_tilde.entries == RationalMatrix{{q("1/2")}});
    CHECK(tlt_tilde_matrix(f.pull({})).entries.empty());

    const TltMatrix cd = tlt_matrix(f.pull({{"c", "d"}}));
    CHECK(cd.rows == std::vector<Split>{split(m, {"c", "d"})});
    CHECK(cd.entries == RationalMatrix{{2}});
    // The single degree-2 component over {b,c} separates {c#1, c#2} = {iota(c), iota(a)}.
    const TltMatrix bc = tlt_matrix(f.pull({{"b", "c"}}));
    CHECK(bc.rows == std::vector<Split>{split(m, {"a", "c"})});
    CHECK(bc.entries == RationalMatrix{{q("1/2")}});
  }

  TEST_CASE("phi_star and stability on COVER-L") {
    const Fixture f;
    const Marking& m = f.cover.order();
    CHECK(phi_star(f.pull({{"c", "d"}})) == std::vector<Split>{split(m, {"a", "b"})});
    CHECK(phi_star(f.pull({{"a", "b"}})) == std::vector<Split>{split(m, {"c", "d"})});
    CHECK(phi_star(f.pull({})).empty());

    const StabilityResult cd = stability_and_eigenvalue(f.cover, f.portrait, curve(m, {{"c", "d"}}));
    CHECK(cd.stable);
    REQUIRE(cd.matrix);
    CHECK(cd.matrix->entries == RationalMatrix{{2}});
    REQUIRE(cd.eigen);
    CHECK(cd.eigen->rational == std::optional<Rational>{2});
    CHECK(cd.obstruction);

    const StabilityResult bc = stability_and_eigenvalue(f.cover, f.portrait, curve(m, {{"b", "c"}}));
    CHECK_FALSE(bc.stable);
    CHECK_FALSE(bc.obstruction);

    const StabilityResult none = stability_and_eigenvalue(f.cover, f.portrait, curve(m, {}));
    CHECK(none.stable);
    CHECK_FALSE(none.eigen);
    CHECK_FALSE(none.obstruction);
  }

  TEST_CASE("square_up pads with zero rows") {
    const Fixture f;
    const Marking& m = f.cover.order();
    const StandardMulticurve gamma = curve(m, {{"c", "d"}});
    const TltMatrix t = tlt_matrix(pullback_tree(f.cover, f.portrait, gamma));
    CHECK(square_up(t, gamma.dual_tree())->entries == RationalMatrix{{2}});
    const StandardMulticurve other = curve(m, {{"b", "c"}});
    CHECK_FALSE(square_up(t, other.dual_tree()).has_value());
  }

  TEST_CASE("property: pullback invariants, TLT factorization and the lifting oracle on the corpus") {
    std::size_t instances = 0, dropped = 0;
    for (const auto& entry : tctest::make_corpus(41, 110)) {
      const auto& cover = entry.cover;
      for (const auto& gamma : enumerate_standard_multicurves(cover.order(), 3)) {
        const PullbackResult r = pullback_tree(cover, entry.portrait, gamma);
        ++instances;
        // tree shape
        CHECK(r.edges.size() + 1 == r.vertices.size());
        std::vector<std::vector<std::size_t>> adj(r.vertices.size());
        for (const auto& e : r.edges) {
          adj[e.inner].push_back(e.outer);
          adj[e.outer].push_back(e.inner);
        }
        std::vector<char> seen(r.vertices.size(), 0);
        std::deque<std::size_t> queue{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!queue.empty()) {
          const std::size_t v = queue.front();
          queue.pop_front();
          for (std::size_t w : adj[v]) {
            if (!seen[w]) {
              seen[w] = 1;
              ++reached;
              queue.push_back(w);
            }
          }
        }
        CHECK(reached == r.vertices.size());
        // flags: k (m - 2) + 2 over a region of valence m
        for (std::size_t v = 0; v < r.vertices.size(); ++v) {
          const std::size_t flags = r.vertices[v].legs.size() + adj[v].size();
          const std::size_t k = r.vertices[v].sheets.size();
          const std::size_t m = r.downstairs.vertices[r.vertices[v].region].valence;
          CHECK(flags >= 3);
          CHECK(flags == k * (m - 2) + 2);
        }
        // degrees over each block sum to d
        std::vector<int> total(gamma.size(), 0);
        for (const auto& e : r.edges) total[e.block] += e.degree;
        for (int t : total) CHECK(t == cover.degree());
        // factorization and the independent lift
        const TltMatrix tilde = tlt_tilde_matrix(r);
        CHECK(tlt_matrix(r) == push_to_marking(tilde, cover, entry.portrait));
        CHECK(tctest::sparse(tilde) == tctest::lifted_tlt_tilde(cover, gamma));
        for (Split s : tilde.rows) {
          const Mask restricted = restrict_side(s.side, entry.portrait.iota);
          if (!try_make_split(cover.order(), restricted)) ++dropped;
        }
      }
    }
    CHECK(instances > 500);
    CHECK(dropped > 0);
  }
}
