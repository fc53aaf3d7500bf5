#include "support/corpus.hpp"

#include <algorithm>
#include <set>

#include "tropcorr/errors.hpp"

using namespace tropcorr;

namespace tctest {

namespace {

Perm transposition(int d, int i, int j) {
  std::vector<int> images(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) images[static_cast<std::size_t>(x)] = x;
  std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
  return Perm::from_images(images);
}

// A transitive factorization of the identity into 2d - 2 transpositions.
std::vector<Perm> factorization(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> sheet(0, d - 1);
  for (;;) {
    std::vector<Perm> ts;
    Perm product(d);
    for (int k = 0; k < 2 * d - 3; ++k) {
      int i = sheet(rng), j = sheet(rng);
      while (j == i) j = sheet(rng);
      ts.push_back(transposition(d, i, j));
      product = product * ts.back();
    }
    const Perm last = product.inverse();
    if (last.cycle_count() != d - 1) continue;
    ts.push_back(last);
    if (orbits(d, ts).size() == 1) return ts;
  }
}

std::optional<DynamicalPortrait> random_portrait(std::mt19937_64& rng, const MonodromyCover& cover) {
  const std::size_t n = cover.order().size();
  const std::size_t m = cover.preimages().size();
  std::vector<std::size_t> points(m);
  for (std::size_t i = 0; i < m; ++i) points[i] = i;
  for (int attempt = 0; attempt < 400; ++attempt) {
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<std::size_t> iota(points.begin(), points.begin() + static_cast<long>(n));
    try {
      return validate_portrait(cover, iota);
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace

Marking letters(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return Marking(labels);
}

std::vector<CorpusEntry> make_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  std::set<std::pair<std::vector<Perm>, std::vector<std::size_t>>> seen;
  for (std::size_t round = 0; out.size() < count && round < 200000; ++round) {
    const bool small = out.size() % 3 == 0;
    const int d = small ? std::uniform_int_distribution<int>(2, 3)(rng) : std::uniform_int_distribution<int>(2, 4)(rng);
    const std::size_t n = small ? 4 : std::uniform_int_distribution<std::size_t>(4, 6)(rng);
    const auto ts = factorization(rng, d);
    // Cut the factorization into n consecutive chunks, some possibly empty.
    std::vector<std::size_t> cuts;
    std::uniform_int_distribution<std::size_t> cut(0, ts.size());
    for (std::size_t k = 0; k + 1 < n; ++k) cuts.push_back(cut(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(ts.size());
    std::vector<Perm> perms;
    for (std::size_t k = 0; k < n; ++k) {
      Perm p(d);
      for (std::size_t t = cuts[k]; t < cuts[k + 1]; ++t) p = p * ts[t];
      perms.push_back(p);
    }
    MonodromyCover cover;
    try {
      cover = validate_cover(letters(n), d, perms);
    } catch (const Error&) {
      continue;  // chunk products cancelled, so the genus is wrong
    }
    auto portrait = random_portrait(rng, cover);
    if (!portrait) continue;
    if (!seen.insert({perms, portrait->iota}).second) continue;
    std::string name = "d" + std::to_string(d) + "n" + std::to_string(n) + ":";
    for (const auto& p : perms) name += "[" + to_cycle_string(p) + "]";
    out.push_back({std::move(cover), *portrait, name});
  }
  return out;
}

MonodromyCover cover_l() {
  return validate_cover(letters(4), 2,
                        {parse_cycles("(1 2)", 2), parse_cycles("(1 2)", 2), Perm(2), Perm(2)});
}

DynamicalPortrait cover_l_portrait(const MonodromyCover& cover) {
  const std::vector<std::string> keys{"c#2", "d#2", "c#1", "d#1"};
  return validate_portrait(cover, keys);
}

MonodromyCover two_cycle_cover() {
  return validate_cover(letters(4), 2,
                        {parse_cycles("(1 2)", 2), Perm(2), parse_cycles("(1 2)", 2), Perm(2)});
}

DynamicalPortrait two_cycle_portrait(const MonodromyCover& cover) {
  const std::vector<std::string> keys{"b#1", "c#1", "d#1", "a#1"};
  return validate_portrait(cover, keys);
}

StandardMulticurve curve(const Marking& order, std::vector<std::vector<std::string>> blocks) {
  std::vector<Mask> masks;
  for (const auto& b : blocks) masks.push_back(order.mask_of(b));
  return validate_multicurve(order, masks);
}

std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<long> num(1, 9), den(1, 4);
  std::vector<Rational> w;
  for (std::size_t i = 0; i < count; ++i) w.push_back(make_rational(num(rng), den(rng)));
  return w;
}

}  // namespace tctest
