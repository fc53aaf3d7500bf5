#include "tropcorr/monodromy.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "tropcorr/errors.hpp"

namespace tropcorr {

Perm::Perm(int degree) : images_(static_cast<std::size_t>(degree)) {
  std::iota(images_.begin(), images_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images) {
  std::vector<char> hit(images.size(), 0);
  for (int x : images) {
    if (x < 0 || static_cast<std::size_t>(x) >= images.size() || hit[static_cast<std::size_t>(x)]) {
      throw Error(Errc::BadPermutation, "image list is not a bijection");
    }
    hit[static_cast<std::size_t>(x)] = 1;
  }
  Perm p;
  p.images_ = std::move(images);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm p(degree());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return p;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = 1;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> t;
  for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
  std::sort(t.begin(), t.end());
  return t;
}

int Perm::cycle_count() const { return static_cast<int>(cycles().size()); }

Perm operator*(const Perm& first, const Perm& then) {
  if (first.degree() != then.degree()) throw Error(Errc::BadPermutation, "degree mismatch in product");
  Perm p(first.degree());
  for (int x = 0; x < first.degree(); ++x) p.images_[static_cast<std::size_t>(x)] = then(first(x));
  return p;
}

Perm parse_cycles(std::string_view text, int degree) {
  if (degree < 1) throw Error(Errc::BadPermutation, "degree must be positive");
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (text.substr(i) == "id") return Perm(degree);
  while (true) {
    skip_space();
    if (i >= text.size()) break;
    if (text[i] != '(') throw Error(Errc::ParseError, "expected '(' in cycle notation '" + std::string(text) + "'");
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw Error(Errc::ParseError, "bad cycle notation '" + std::string(text) + "'");
      const int sheet = std::stoi(std::string(text.substr(start, i - start))) - 1;
      if (sheet < 0 || sheet >= degree) {
        throw Error(Errc::BadPermutation, "sheet " + std::to_string(sheet + 1) + " out of range 1.." +
                                              std::to_string(degree));
      }
      if (used[static_cast<std::size_t>(sheet)]) {
        throw Error(Errc::BadPermutation, "sheet " + std::to_string(sheet + 1) + " repeated in '" +
                                              std::string(text) + "'");
      }
      used[static_cast<std::size_t>(sheet)] = 1;
      cycle.push_back(sheet);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
  }
  return Perm::from_images(std::move(images));
}

std::string to_cycle_string(const Perm& p) {
  std::string out;
  for (const auto& c : p.cycles()) {
    if (c.size() < 2) continue;
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k] + 1);
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

std::vector<std::vector<int>> orbits(int degree, std::span<const Perm> gens) {
  std::vector<int> parent(static_cast<std::size_t>(degree));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& g : gens) {
    for (int x = 0; x < degree; ++x) {
      int a = find(x), b = find(g(x));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int x = 0; x < degree; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

std::size_t MonodromyCover::preimage_at(std::size_t base, int sheet) const {
  for (std::size_t q : over_.at(base)) {
    const auto& c = preimages_[q].cycle;
    if (std::binary_search(c.begin(), c.end(), sheet)) return q;
  }
  throw Error(Errc::Internal, "sheet not covered by any cycle");
}

std::vector<std::size_t> MonodromyCover::leg_map() const {
  std::vector<std::size_t> out;
  out.reserve(preimages_.size());
  for (const auto& q : preimages_) out.push_back(q.base);
  return out;
}

MonodromyCover validate_cover(const Marking& order, int degree, std::vector<Perm> perms, const CoverOptions& options) {
  if (degree < 1 || (degree < 2 && !options.allow_degree_one)) {
    throw Error(Errc::DegreeTooSmall, "degree " + std::to_string(degree) + " is below 2");
  }
  if (perms.size() != order.size()) {
    throw Error(Errc::BadPermutation, "expected one permutation per label (" + std::to_string(order.size()) + ")");
  }
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (perms[i].degree() != degree) {
      throw Error(Errc::BadPermutation, "permutation of '" + order.label(i) + "' has the wrong degree");
    }
  }
  Perm product(degree);
  for (const auto& p : perms) product = product * p;
  if (!product.is_identity()) {
    throw Error(Errc::ProductNotIdentity, "ordered product is " + to_cycle_string(product));
  }
  if (orbits(degree, perms).size() != 1) throw Error(Errc::NotTransitive, "monodromy group is not transitive");
  int deficiency = 0;
  for (const auto& p : perms) deficiency += degree - p.cycle_count();
  if (deficiency != 2 * degree - 2) {
    throw Error(Errc::GenusNotZero, "Riemann-Hurwitz total " + std::to_string(deficiency) + " != 2d-2 = " +
                                        std::to_string(2 * degree - 2));
  }

  MonodromyCover cover;
  cover.order_ = order;
  cover.degree_ = degree;
  cover.perms_ = std::move(perms);
  cover.over_.resize(order.size());
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto c : cover.perms_[i].cycles()) {
      std::sort(c.begin(), c.end());
      PreimagePoint q;
      q.base = i;
      q.local_degree = static_cast<int>(c.size());
      q.key = order.label(i) + "#" + std::to_string(c.front() + 1);
      q.cycle = std::move(c);
      cover.over_[i].push_back(cover.preimages_.size());
      keys.push_back(q.key);
      cover.preimages_.push_back(std::move(q));
    }
  }
  cover.preimage_marking_ = Marking(std::move(keys));
  return cover;
}

DynamicalPortrait validate_portrait(const MonodromyCover& cover, std::vector<std::size_t> iota) {
  const std::size_t n = cover.order().size();
  if (iota.size() != n) throw Error(Errc::NotInjective, "portrait must assign every label");
  std::set<std::size_t> used;
  DynamicalPortrait portrait;
  portrait.step.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (iota[p] >= cover.preimages().size()) throw Error(Errc::BadLabel, "preimage index out of range");
    if (!used.insert(iota[p]).second) {
      throw Error(Errc::NotInjective, "'" + cover.order().label(p) + "' shares its preimage point " +
                                          cover.preimages()[iota[p]].key);
    }
    portrait.step[p] = cover.preimages()[iota[p]].base;
  }
  portrait.iota = std::move(iota);

  std::vector<char> reached(n, 0);
  for (const auto& q : cover.preimages()) {
    if (q.local_degree < 2) continue;
    for (std::size_t x = q.base; !reached[x]; x = portrait.step[x]) reached[x] = 1;
  }
  std::string missing;
  for (std::size_t p = 0; p < n; ++p) {
    if (!reached[p]) missing += (missing.empty() ? "" : ",") + cover.order().label(p);
  }
  if (!missing.empty()) {
    throw Error(Errc::NotPostcriticallyClosed, "labels not in the post-critical set: " + missing);
  }
  return portrait;
}

DynamicalPortrait validate_portrait(const MonodromyCover& cover, std::span<const std::string> iota_keys) {
  std::vector<std::size_t> iota;
  for (const auto& key : iota_keys) {
    auto q = cover.find_preimage(key);
    if (!q) throw Error(Errc::BadLabel, "unknown preimage point '" + key + "'");
    iota.push_back(*q);
  }
  return validate_portrait(cover, std::move(iota));
}

OrbifoldSignature orbifold_signature(const MonodromyCover& cover, const DynamicalPortrait& portrait) {
  const std::size_t n = cover.order().size();
  std::vector<std::optional<std::size_t>> preimage_label(cover.preimages().size());
  for (std::size_t p = 0; p < n; ++p) preimage_label[portrait.iota[p]] = p;

  // A periodic label whose cycle passes through a critical point has nu = oo.
  std::vector<char> infinite(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t x = p;
    for (std::size_t k = 0; k < n; ++k) x = portrait.step[x];
    // x is now periodic; p is periodic iff it lies on x's cycle.
    bool on_cycle = false, critical = false;
    std::size_t y = x;
    do {
      on_cycle |= (y == p);
      critical |= cover.preimages()[portrait.iota[y]].local_degree > 1;
      y = portrait.step[y];
    } while (y != x);
    infinite[p] = on_cycle && critical;
  }

  std::vector<std::uint64_t> nu(n, 1);
  bool changed = true;
  for (std::size_t round = 0; changed; ++round) {
    if (round > 2 * n + 2) throw Error(Errc::Internal, "orbifold iteration did not stabilize");
    changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (infinite[p]) continue;
      std::uint64_t value = 1;
      for (std::size_t q : cover.preimages_over(p)) {
        std::uint64_t contribution = static_cast<std::uint64_t>(cover.preimages()[q].local_degree);
        if (auto r = preimage_label[q]) {
          if (infinite[*r]) throw Error(Errc::Internal, "finite label fed by an infinite one");
          unsigned __int128 wide = static_cast<unsigned __int128>(contribution) * nu[*r];
          if (wide > UINT64_MAX) throw Error(Errc::Overflow, "orbifold weight exceeds 64 bits");
          contribution = static_cast<std::uint64_t>(wide);
        }
        const std::uint64_t g = std::gcd(value, contribution);
        unsigned __int128 wide = static_cast<unsigned __int128>(value / g) * contribution;
        if (wide > UINT64_MAX) throw Error(Errc::Overflow, "orbifold weight exceeds 64 bits");
        value = static_cast<std::uint64_t>(wide);
      }
      if (value != nu[p]) {
        nu[p] = value;
        changed = true;
      }
    }
  }

  OrbifoldSignature sig;
  sig.euler_sum = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (infinite[p]) {
      sig.nu.push_back(std::nullopt);
      sig.euler_sum += 1;
    } else {
      sig.nu.push_back(nu[p]);
      sig.euler_sum += 1 - Rational(Integer(1), Integer(std::to_string(nu[p])));
    }
  }
  sig.hyperbolic = sig.euler_sum > 2;
  return sig;
}

BraidResult braid_act(const MonodromyCover& cover, const DynamicalPortrait& portrait, std::span<const int> word) {
  const std::size_t n = cover.order().size();
  std::vector<std::string> labels = cover.order().labels();
  std::vector<Perm> perms = cover.perms();
  std::vector<std::size_t> origin(n);
  std::iota(origin.begin(), origin.end(), 0);
  // Portrait targets tracked as (base label, one sheet of the cycle).
  std::vector<std::pair<std::string, int>> targets;
  for (std::size_t p = 0; p < n; ++p) {
    const auto& q = cover.preimages()[portrait.iota[p]];
    targets.emplace_back(cover.order().label(q.base), q.cycle.front());
  }
  auto move_sheets = [&](const std::string& label, const Perm& map) {
    for (auto& [base, sheet] : targets) {
      if (base == label) sheet = map(sheet);
    }
  };

  for (int g : word) {
    const int i = g < 0 ? -g : g;
    if (g == 0 || static_cast<std::size_t>(i) >= n) {
      throw Error(Errc::BadGenerator, "generator " + std::to_string(g) + " outside 1.." + std::to_string(n - 1));
    }
    const std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(i);
    const Perm left = perms[a], right = perms[b];
    if (g > 0) {
      // (s_i, s_{i+1}) -> (s_i s_{i+1} s_i^-1, s_i); cycles of the moved
      // generator are carried by s_i^-1.
      perms[a] = left * right * left.inverse();
      perms[b] = left;
      move_sheets(labels[b], left.inverse());
    } else {
      // (s_i, s_{i+1}) -> (s_{i+1}, s_{i+1}^-1 s_i s_{i+1}); cycles carried by s_{i+1}.
      perms[a] = right;
      perms[b] = right.inverse() * left * right;
      move_sheets(labels[a], right);
    }
    std::swap(labels[a], labels[b]);
    std::swap(origin[a], origin[b]);
  }

  Marking order(labels);
  MonodromyCover moved = validate_cover(order, cover.degree(), std::move(perms), CoverOptions{cover.degree() < 2});
  std::vector<std::size_t> iota(n);
  for (std::size_t p = 0; p < n; ++p) {
    // label at new position p was at origin[p]
    const auto& [base, sheet] = targets[origin[p]];
    iota[p] = moved.preimage_at(order.index(base), sheet);
  }
  DynamicalPortrait new_portrait = validate_portrait(moved, std::move(iota));
  return BraidResult{std::move(moved), std::move(new_portrait), std::move(origin)};
}

BlockRange canonical_block(const Marking& order, Mask block) {
  block &= order.full();
  const std::size_t n = order.size();
  const std::size_t k = static_cast<std::size_t>(popcount(block));
  if (k < 2 || k + 2 > n) {
    throw Error(Errc::TrivialBlock, "block {" + split_key(order, Split{block}) + "} must leave two labels on each side");
  }
  if (block & order.last_bit()) block = order.full() & ~block;
  const std::size_t first = static_cast<std::size_t>(__builtin_ctzll(block));
  const std::size_t size = static_cast<std::size_t>(popcount(block));
  if ((block >> first) != (bit(size) - 1)) {
    throw Error(Errc::NotConsecutive, "block {" + split_key(order, Split{block}) + "} is not consecutive in the cyclic order");
  }
  return BlockRange{first, first + size - 1};
}

Perm curve_monodromy(const MonodromyCover& cover, Mask block) {
  const auto range = canonical_block(cover.order(), block);
  Perm m(cover.degree());
  for (std::size_t i = range.first; i <= range.last; ++i) m = m * cover.perm(i);
  return m;
}

}  // namespace tropcorr
