#include "tenfact/groups.hpp"

#include "tenfact/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace tenfact {

namespace {

[[noreturn]] void invalid_group(const std::string& why) {
  fail(ErrorCode::kInvalidData, "invalid group table: " + why);
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::string> labels,
                                    std::vector<std::vector<Index>> table,
                                    std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (n == 0) invalid_group("empty group");
  if (table.size() != n) invalid_group("table must have one row per label");
  FiniteGroup g;
  g.labels_ = std::move(labels);
  g.table_.resize(n * n);
  for (Index a = 0; a < n; ++a) {
    if (table[a].size() != n) invalid_group("table must be square");
    for (Index b = 0; b < n; ++b) {
      if (table[a][b] >= n) invalid_group("entry out of range");
      g.table_[a * n + b] = table[a][b];
    }
  }
  {
    std::set<std::string> distinct(g.labels_.begin(), g.labels_.end());
    if (distinct.size() != n) invalid_group("labels must be distinct");
  }
  // Latin square.
  for (Index a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (Index b = 0; b < n; ++b) {
      Index r = g.table_[a * n + b];
      Index c = g.table_[b * n + a];
      if (row[r] || col[c]) invalid_group("table is not a Latin square");
      row[r] = col[c] = true;
    }
  }
  // Identity.
  Index identity = npos;
  for (Index e = 0; e < n && identity == npos; ++e) {
    bool ok = true;
    for (Index b = 0; b < n && ok; ++b) {
      ok = g.table_[e * n + b] == b && g.table_[b * n + e] == b;
    }
    if (ok) identity = e;
  }
  if (identity == npos) invalid_group("no identity element");
  g.identity_ = identity;
  // Inverses.
  g.inverses_.assign(n, npos);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (g.table_[a * n + b] == identity) {
        if (g.table_[b * n + a] != identity) {
          invalid_group("left and right inverses differ");
        }
        g.inverses_[a] = b;
        break;
      }
    }
    if (g.inverses_[a] == npos) invalid_group("element without inverse");
  }
  // Associativity.
  auto assoc = [&](Index a, Index b, Index c) {
    return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
  };
  if (n <= 64) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c)
          if (!assoc(a, b, c)) invalid_group("multiplication is not associative");
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (int t = 0; t < 200000; ++t) {
      if (!assoc(pick(rng), pick(rng), pick(rng))) {
        invalid_group("multiplication is not associative (sampled)");
      }
    }
    // Light's test against a generating set.
    std::vector<Index> gens;
    std::vector<bool> reached(n, false);
    reached[identity] = true;
    std::size_t count = 1;
    for (Index cand = 0; cand < n && count < n; ++cand) {
      if (reached[cand]) continue;
      gens.push_back(cand);
      std::vector<Index> frontier;
      for (Index x = 0; x < n; ++x)
        if (reached[x]) frontier.push_back(x);
      while (!frontier.empty()) {
        std::vector<Index> next;
        for (Index x : frontier) {
          for (Index s : gens) {
            Index y = g.mul(x, s);
            if (!reached[y]) {
              reached[y] = true;
              ++count;
              next.push_back(y);
            }
          }
        }
        frontier = std::move(next);
      }
    }
    for (Index s : gens)
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          if (!assoc(a, s, b)) invalid_group("multiplication is not associative");
  }
  return g;
}

std::vector<std::vector<Index>> FiniteGroup::table() const {
  const std::size_t n = order();
  std::vector<std::vector<Index>> out(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) out[a][b] = mul(a, b);
  return out;
}

Index FiniteGroup::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? npos : static_cast<Index>(it - labels_.begin());
}

Index FiniteGroup::element_order(Index a) const {
  Index k = 1;
  Index x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool Subgroup::contains(Index g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

bool is_subgroup(const FiniteGroup& g, const std::vector<Index>& elements) {
  std::vector<bool> member(g.order(), false);
  for (Index e : elements) {
    if (e >= g.order()) return false;
    member[e] = true;
  }
  if (!member[g.identity()]) return false;
  for (Index a : elements) {
    if (!member[g.inverse(a)]) return false;
    for (Index b : elements) {
      if (!member[g.mul(a, b)]) return false;
    }
  }
  return true;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_subgroup(g, elements)) {
    fail(ErrorCode::kNotSubgroup, "elements do not form a subgroup");
  }
  return Subgroup{std::move(elements)};
}

namespace {

// Closure of {e} under right multiplication by generators. In a finite
// group this is the generated subgroup.
std::vector<bool> closure_mask(const FiniteGroup& g,
                               const std::vector<Index>& gens) {
  std::vector<bool> mask(g.order(), false);
  std::vector<Index> frontier{g.identity()};
  mask[g.identity()] = true;
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index x : frontier) {
      for (Index s : gens) {
        Index y = g.mul(x, s);
        if (!mask[y]) {
          mask[y] = true;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return mask;
}

Subgroup from_mask(const std::vector<bool>& mask) {
  Subgroup h;
  for (Index i = 0; i < mask.size(); ++i)
    if (mask[i]) h.elements.push_back(i);
  return h;
}

}  // namespace

Subgroup generate_subgroup(const FiniteGroup& g,
                           const std::vector<Index>& generators) {
  for (Index s : generators) {
    if (s >= g.order()) fail(ErrorCode::kIndexOutOfRange, "generator out of range");
  }
  return from_mask(closure_mask(g, generators));
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup{{g.identity()}};
}

Subgroup whole_group(const FiniteGroup& g) {
  Subgroup h;
  h.elements.resize(g.order());
  std::iota(h.elements.begin(), h.elements.end(), Index{0});
  return h;
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Index by) {
  Subgroup out;
  out.elements.reserve(h.order());
  const Index inv = g.inverse(by);
  for (Index x : h.elements) out.elements.push_back(g.mul(g.mul(by, x), inv));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::vector<Subgroup> subgroups(const FiniteGroup& g, std::size_t order_limit) {
  const std::size_t n = g.order();
  if (n > order_limit) {
    fail(ErrorCode::kOrderLimit, "group order " + std::to_string(n) +
                                     " exceeds subgroup search limit " +
                                     std::to_string(order_limit));
  }
  struct Found {
    std::vector<bool> mask;
    std::vector<Index> gens;
  };
  std::set<std::vector<bool>> seen;
  std::vector<Found> all;
  std::vector<std::size_t> frontier;
  {
    Found trivial{closure_mask(g, {}), {}};
    seen.insert(trivial.mask);
    all.push_back(std::move(trivial));
    frontier.push_back(0);
  }
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const std::vector<bool> base = all[idx].mask;
      const std::vector<Index> base_gens = all[idx].gens;
      for (Index x = 0; x < n; ++x) {
        if (base[x]) continue;
        std::vector<Index> gens = base_gens;
        gens.push_back(x);
        std::vector<bool> mask = closure_mask(g, gens);
        if (seen.insert(mask).second) {
          all.push_back({std::move(mask), std::move(gens)});
          next.push_back(all.size() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (const Found& f : all) out.push_back(from_mask(f.mask));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

std::vector<std::size_t> conjugacy_class_ids(const FiniteGroup& g,
                                             const std::vector<Subgroup>& subs) {
  std::map<std::vector<Index>, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i].elements] = i;
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> ids(subs.size(), none);
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (ids[i] != none) continue;
    for (Index by = 0; by < g.order(); ++by) {
      auto it = index.find(conjugate(g, subs[i], by).elements);
      if (it != index.end()) ids[it->second] = next_id;
    }
    ++next_id;
  }
  return ids;
}

bool is_exact_factorization(const FiniteGroup& g, const Subgroup& h1,
                            const Subgroup& h2) {
  if (h1.order() * h2.order() != g.order()) return false;
  std::size_t common = 0;
  for (Index x : h1.elements)
    if (h2.contains(x)) ++common;
  return common == 1;
}

std::vector<GroupFactorization> enumerate_exact_factorizations(
    const FiniteGroup& g, std::size_t order_limit) {
  const std::vector<Subgroup> subs = subgroups(g, order_limit);
  std::map<std::vector<Index>, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index[subs[i].elements] = i;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < subs.size(); ++j) {
      if (is_exact_factorization(g, subs[i], subs[j])) pairs.emplace_back(i, j);
    }
  }
  // Orbit key under simultaneous conjugation and swap.
  auto key_of = [&](std::size_t i, std::size_t j) {
    std::pair<std::size_t, std::size_t> best{i, j};
    for (Index by = 0; by < g.order(); ++by) {
      std::size_t ci = index.at(conjugate(g, subs[i], by).elements);
      std::size_t cj = index.at(conjugate(g, subs[j], by).elements);
      best = std::min({best, std::pair{ci, cj}, std::pair{cj, ci}});
    }
    return best;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> class_of_key;
  std::vector<GroupFactorization> out;
  for (auto [i, j] : pairs) {
    GroupFactorization f;
    f.first = subs[i];
    f.second = subs[j];
    f.trivial = subs[i].order() == 1 || subs[j].order() == 1;
    const auto key = key_of(i, j);
    auto [it, inserted] = class_of_key.emplace(key, class_of_key.size());
    f.class_id = it->second;
    f.representative = inserted;
    out.push_back(std::move(f));
  }
  return out;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h,
                              std::vector<Index>* embedding) {
  std::map<Index, Index> local;
  for (Index i = 0; i < h.order(); ++i) local[h.elements[i]] = i;
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> table(h.order(),
                                        std::vector<Index>(h.order()));
  for (Index i = 0; i < h.order(); ++i) {
    labels.push_back(g.label(h.elements[i]));
    for (Index j = 0; j < h.order(); ++j) {
      auto it = local.find(g.mul(h.elements[i], h.elements[j]));
      if (it == local.end()) {
        fail(ErrorCode::kNotSubgroup, "subset is not closed under multiplication");
      }
      table[i][j] = it->second;
    }
  }
  if (embedding != nullptr) *embedding = h.elements;
  return FiniteGroup::from_table(std::move(labels), std::move(table));
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0 || n > kSubgroupOrderLimit) {
    fail(ErrorCode::kOrderLimit, "cyclic group order out of range");
  }
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (Index b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_table(std::move(labels), std::move(table));
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1 || 2 * n > kSubgroupOrderLimit) {
    fail(ErrorCode::kOrderLimit, "dihedral group parameter out of range");
  }
  // Element (i, j) = r^i s^j at index j * n + i.
  auto idx = [n](std::size_t i, std::size_t j) { return j * n + i; };
  std::vector<std::string> labels(2 * n);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      std::string r = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
      std::string s = j == 0 ? "" : "s";
      labels[idx(i, j)] = (r + s).empty() ? "e" : r + s;
    }
  }
  std::vector<std::vector<Index>> table(2 * n, std::vector<Index>(2 * n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < 2; ++d) {
          // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b+d)
          std::size_t i = b == 0 ? (a + c) % n : (a + n - c) % n;
          table[idx(a, b)][idx(c, d)] = idx(i, (b + d) % 2);
        }
  return FiniteGroup::from_table(std::move(labels), std::move(table));
}

FiniteGroup dicyclic_group(std::size_t n) {
  if (n < 1 || 4 * n > kSubgroupOrderLimit) {
    fail(ErrorCode::kOrderLimit, "dicyclic group parameter out of range");
  }
  const std::size_t m = 2 * n;
  // Element a^k x^j at index j * m + k; a^m = 1, x^2 = a^n, x a = a^-1 x.
  auto idx = [m](std::size_t k, std::size_t j) { return j * m + k; };
  std::vector<std::string> labels(2 * m);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      std::string a = k == 0 ? "" : (k == 1 ? "a" : "a^" + std::to_string(k));
      std::string x = j == 0 ? "" : "x";
      labels[idx(k, j)] = (a + x).empty() ? "e" : a + x;
    }
  }
  std::vector<std::vector<Index>> table(2 * m, std::vector<Index>(2 * m));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t i = 0; i < 2; ++i) {
          std::size_t power;
          std::size_t xs;
          if (j == 0) {
            power = (k + l) % m;
            xs = i;
          } else {
            power = (k + m - l) % m;
            xs = 1 + i;
          }
          if (xs == 2) {
            power = (power + n) % m;
            xs = 0;
          }
          table[idx(k, j)][idx(l, i)] = idx(power, xs);
        }
  return FiniteGroup::from_table(std::move(labels), std::move(table));
}

namespace {

std::string cycle_label(const std::vector<std::size_t>& perm) {
  std::string out;
  std::vector<bool> done(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (done[start] || perm[start] == start) continue;
    out += "(";
    std::size_t x = start;
    bool first = true;
    while (!done[x]) {
      done[x] = true;
      if (!first) out += " ";
      out += std::to_string(x + 1);
      first = false;
      x = perm[x];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace

namespace {

std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

bool is_even(const std::vector<std::size_t>& p) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

}  // namespace

FiniteGroup symmetric_group(std::size_t n) {
  if (n < 1 || n > 4) fail(ErrorCode::kOrderLimit, "symmetric(n) supports n <= 4");
  const auto perms = all_permutations(n);
  std::map<std::vector<std::size_t>, Index> index;
  for (Index i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> table(perms.size(),
                                        std::vector<Index>(perms.size()));
  for (Index a = 0; a < perms.size(); ++a) {
    labels.push_back(cycle_label(perms[a]));
    for (Index b = 0; b < perms.size(); ++b) {
      // (ab)(i) = a(b(i))
      std::vector<std::size_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = index.at(c);
    }
  }
  return FiniteGroup::from_table(std::move(labels), std::move(table));
}

FiniteGroup alternating_group(std::size_t n) {
  const FiniteGroup s = symmetric_group(n);
  const auto perms = all_permutations(n);
  std::vector<Index> even;
  for (Index a = 0; a < perms.size(); ++a)
    if (is_even(perms[a])) even.push_back(a);
  return subgroup_as_group(s, make_subgroup(s, even));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  if (na * nb > kSubgroupOrderLimit) {
    fail(ErrorCode::kOrderLimit, "direct product too large");
  }
  std::vector<std::string> labels;
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j)
      labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  std::vector<std::vector<Index>> table(na * nb, std::vector<Index>(na * nb));
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j)
      for (Index k = 0; k < na; ++k)
        for (Index l = 0; l < nb; ++l)
          table[i * nb + j][k * nb + l] = a.mul(i, k) * nb + b.mul(j, l);
  return FiniteGroup::from_table(std::move(labels), std::move(table));
}

std::vector<Index> order_statistics(const FiniteGroup& g) {
  std::vector<Index> out;
  for (Index a = 0; a < g.order(); ++a) out.push_back(g.element_order(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NamedGroup> group_catalog() {
  std::vector<NamedGroup> out;
  for (std::size_t n = 1; n <= 24; ++n) {
    out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
  }
  const FiniteGroup z2 = cyclic_group(2);
  const FiniteGroup z3 = cyclic_group(3);
  const FiniteGroup z4 = cyclic_group(4);
  out.push_back({"Z2xZ2", direct_product(z2, z2)});
  out.push_back({"Z2xZ4", direct_product(z2, z4)});
  out.push_back({"Z2xZ2xZ2", direct_product(direct_product(z2, z2), z2)});
  out.push_back({"Z3xZ3", direct_product(z3, z3)});
  out.push_back({"Z2xZ6", direct_product(z2, cyclic_group(6))});
  out.push_back({"Z4xZ4", direct_product(z4, z4)});
  out.push_back({"Z2xZ8", direct_product(z2, cyclic_group(8))});
  out.push_back({"Z2xZ2xZ4", direct_product(direct_product(z2, z2), z4)});
  out.push_back({"Z2^4", direct_product(direct_product(z2, z2),
                                        direct_product(z2, z2))});
  out.push_back({"Z2xZ10", direct_product(z2, cyclic_group(10))});
  out.push_back({"Z2xZ12", direct_product(z2, cyclic_group(12))});
  out.push_back({"Z2xZ2xZ6", direct_product(direct_product(z2, z2),
                                            cyclic_group(6))});
  out.push_back({"S3", symmetric_group(3)});
  for (std::size_t n = 4; n <= 12; ++n) {
    out.push_back({"D" + std::to_string(n), dihedral_group(n)});
  }
  out.push_back({"Q8", dicyclic_group(2)});
  out.push_back({"Dic3", dicyclic_group(3)});
  out.push_back({"Q16", dicyclic_group(4)});
  out.push_back({"Dic5", dicyclic_group(5)});
  out.push_back({"Dic6", dicyclic_group(6)});
  out.push_back({"A4", alternating_group(4)});
  out.push_back({"S4", symmetric_group(4)});
  out.push_back({"Z2xD4", direct_product(z2, dihedral_group(4))});
  out.push_back({"Z2xQ8", direct_product(z2, dicyclic_group(2))});
  out.push_back({"Z3xS3", direct_product(z3, symmetric_group(3))});
  out.push_back({"Z4xS3", direct_product(z4, symmetric_group(3))});
  out.push_back({"Z3xD4", direct_product(z3, dihedral_group(4))});
  out.push_back({"Z3xQ8", direct_product(z3, dicyclic_group(2))});
  out.push_back({"Z2xA4", direct_product(z2, alternating_group(4))});
  out.push_back({"Z2xZ2xS3", direct_product(direct_product(z2, z2),
                                            symmetric_group(3))});
  return out;
}

}  // namespace tenfact
