#include "tenfact/factor.hpp"

#include "tenfact/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>

namespace tenfact {

namespace {

bool same_target(const Embedding& a, const Embedding& c) {
  if (!a.target || !c.target) return false;
  return a.target == c.target || *a.target == *c.target;
}

void require_same_target(const Embedding& a, const Embedding& c) {
  if (!same_target(a, c)) {
    fail(ErrorCode::kTargetMismatch, "embeddings have different targets");
  }
}

bool relative_equal(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

std::vector<std::int64_t> push_forward(const Embedding& e,
                                       const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> out(e.target->rank(), 0);
  for (Index x = 0; x < v.size(); ++x) out[e.map[x]] += v[x];
  return out;
}

}  // namespace

std::vector<std::string> embedding_problems(const Embedding& e) {
  std::vector<std::string> problems;
  if (!e.source || !e.target) return {"embedding has no source or target"};
  const CategoryData& s = *e.source;
  const CategoryData& t = *e.target;
  check_well_formed(s);
  check_well_formed(t);
  if (e.map.size() != s.rank()) {
    return {"map length " + std::to_string(e.map.size()) +
            " != source rank " + std::to_string(s.rank())};
  }
  std::set<Index> used;
  for (Index x = 0; x < e.map.size(); ++x) {
    if (e.map[x] >= t.rank()) {
      return {"map[" + std::to_string(x) + "] out of target range"};
    }
    if (!used.insert(e.map[x]).second) {
      problems.push_back("map is not injective at target simple " +
                         std::to_string(e.map[x]));
    }
  }
  if (e.map[s.unit] != t.unit) problems.push_back("unit is not mapped to unit");
  for (Index x = 0; x < s.rank(); ++x) {
    if (e.map[s.dual[x]] != t.dual[e.map[x]]) {
      problems.push_back("duality not preserved at source simple " +
                         std::to_string(x));
    }
  }
  const FusionRing rs(s);
  const FusionRing rt(t);
  for (Index x = 0; x < s.rank(); ++x) {
    for (Index y = 0; y < s.rank(); ++y) {
      std::vector<FusionRing::Term> mapped;
      for (const auto& term : rs.product(x, y)) {
        mapped.push_back({e.map[term.simple], term.mult});
      }
      std::sort(mapped.begin(), mapped.end(),
                [](const auto& l, const auto& r) { return l.simple < r.simple; });
      const auto& actual = rt.product(e.map[x], e.map[y]);
      bool same = mapped.size() == actual.size();
      for (std::size_t i = 0; same && i < mapped.size(); ++i) {
        same = mapped[i].simple == actual[i].simple &&
               mapped[i].mult == actual[i].mult;
      }
      if (!same) {
        problems.push_back("fusion not preserved (or image not closed) at (" +
                           std::to_string(x) + "," + std::to_string(y) + ")");
      }
    }
  }
  return problems;
}

void check_embedding(const Embedding& e) {
  auto problems = embedding_problems(e);
  if (!problems.empty()) fail(ErrorCode::kInvalidEmbedding, problems.front());
}

bool FactorizationVerdict::failed(const std::string& criterion) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const CriterionFailure& f) {
                       return f.criterion == criterion;
                     });
}

SimpleSet image(const Embedding& e) {
  SimpleSet out(e.map.begin(), e.map.end());
  std::sort(out.begin(), out.end());
  return out;
}

SimpleSet intersect(const Embedding& a, const Embedding& c) {
  require_same_target(a, c);
  const SimpleSet ia = image(a);
  const SimpleSet ic = image(c);
  SimpleSet out;
  std::set_intersection(ia.begin(), ia.end(), ic.begin(), ic.end(),
                        std::back_inserter(out));
  return out;
}

SimpleSet product_support(const Embedding& a, const Embedding& c) {
  require_same_target(a, c);
  const CategoryData& b = *a.target;
  const FusionRing ring(b);
  const SimpleSet ia = image(a);
  const SimpleSet ic = image(c);
  std::vector<bool> in(b.rank(), false);
  std::vector<Index> frontier{b.unit};
  in[b.unit] = true;
  // Both images contain 1, so closing under left A- and right C-products
  // separately reaches every constituent of X (x) s (x) Y.
  while (!frontier.empty()) {
    std::vector<Index> next;
    auto visit = [&](Index z) {
      if (!in[z]) {
        in[z] = true;
        next.push_back(z);
      }
    };
    for (Index s : frontier) {
      for (Index x : ia)
        for (const auto& t : ring.product(x, s)) visit(t.simple);
      for (Index y : ic)
        for (const auto& t : ring.product(s, y)) visit(t.simple);
    }
    frontier = std::move(next);
  }
  SimpleSet out;
  for (Index z = 0; z < b.rank(); ++z)
    if (in[z]) out.push_back(z);
  return out;
}

FactorizationVerdict check_exact_factorization(const Embedding& a,
                                               const Embedding& c) {
  require_same_target(a, c);
  check_embedding(a);
  check_embedding(c);
  return check_exact_factorization(a, c, fp_character(*a.source),
                                   fp_character(*c.source),
                                   fp_character(*a.target));
}

FactorizationVerdict check_exact_factorization(const Embedding& a,
                                               const Embedding& c,
                                               const FpProfile& profile_a,
                                               const FpProfile& profile_c,
                                               const FpProfile& profile_b) {
  require_same_target(a, c);
  const CategoryData& b = *a.target;
  const CategoryData& sa = *a.source;
  const CategoryData& sc = *c.source;
  const FusionRing ring(b);
  FactorizationVerdict v;

  // (i) X (x) Y simple, and the induced map.
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::vector<Index>> product_of(sa.rank(),
                                             std::vector<Index>(sc.rank(), none));
  for (Index x = 0; x < sa.rank(); ++x) {
    for (Index y = 0; y < sc.rank(); ++y) {
      const auto& terms = ring.product(a.map[x], c.map[y]);
      if (terms.size() == 1 && terms[0].mult == 1) {
        product_of[x][y] = terms[0].simple;
      } else {
        v.failures.push_back({kCritSimpleProducts, {x, y},
                              "X (x) Y is not simple"});
      }
    }
  }

  // (ii) bijection O(A) x O(C) -> O(B).
  std::vector<std::vector<std::pair<Index, Index>>> preimages(b.rank());
  for (Index x = 0; x < sa.rank(); ++x)
    for (Index y = 0; y < sc.rank(); ++y)
      if (product_of[x][y] != none) preimages[product_of[x][y]].push_back({x, y});
  for (Index z = 0; z < b.rank(); ++z) {
    if (preimages[z].empty()) {
      v.failures.push_back({kCritBijection, {z}, "simple of B is not a product X (x) Y"});
    } else if (preimages[z].size() > 1) {
      const auto& p0 = preimages[z][0];
      const auto& p1 = preimages[z][1];
      v.failures.push_back({kCritBijection, {z, p0.first, p0.second, p1.first, p1.second},
                            "simple of B has two factorizations"});
    }
  }

  // (iii) [P_A(X)] [P_C(Y)] = [P_B(X (x) Y)].
  for (Index x = 0; x < sa.rank(); ++x) {
    const GrVector pa{push_forward(a, sa.cartan[x])};
    for (Index y = 0; y < sc.rank(); ++y) {
      if (product_of[x][y] == none) continue;
      const GrVector pc{push_forward(c, sc.cartan[y])};
      const GrVector prod = ring.multiply(pa, pc);
      if (prod.coeffs != b.cartan[product_of[x][y]]) {
        v.failures.push_back({kCritProjectiveCovers, {x, y, product_of[x][y]},
                              "P_A(X) (x) P_C(Y) and P_B(X (x) Y) have different classes"});
      }
    }
  }

  // (iv) A cap C = {1}.
  const SimpleSet meet = intersect(a, c);
  if (meet != SimpleSet{b.unit}) {
    std::vector<Index> witness;
    for (Index z : meet)
      if (z != b.unit) witness.push_back(z);
    v.failures.push_back({kCritTrivialIntersection, witness,
                          "A and C share a nonunit simple"});
  }

  v.fpdim_a = profile_a.cat_dim;
  v.fpdim_c = profile_c.cat_dim;
  v.fpdim_b = profile_b.cat_dim;
  v.fpdim_product_equal = relative_equal(v.fpdim_b, v.fpdim_a * v.fpdim_c,
                                         kFpdimRelativeTolerance);
  v.ok = v.failures.empty();
  if (v.ok) {
    for (Index x = 0; x < sa.rank(); ++x)
      for (Index y = 0; y < sc.rank(); ++y)
        v.bijection.push_back({x, y, product_of[x][y]});
  }
  return v;
}

FpdimRatioReport fpdim_ratio_check(const Embedding& a, const Embedding& c) {
  require_same_target(a, c);
  check_embedding(a);
  check_embedding(c);
  const CategoryData& b = *a.target;
  FpdimRatioReport r;
  r.intersection = intersect(a, c);

  auto source_index = [](const Embedding& e, Index target) {
    for (Index i = 0; i < e.map.size(); ++i)
      if (e.map[i] == target) return i;
    fail(ErrorCode::kInvalidEmbedding, "simple not in image");
  };
  auto row_is_unit = [](const CategoryData& d, Index x) {
    for (Index y = 0; y < d.rank(); ++y)
      if (d.cartan[x][y] != (x == y ? 1 : 0)) return false;
    return true;
  };
  for (Index z : r.intersection) {
    if (!row_is_unit(*a.source, source_index(a, z)) ||
        !row_is_unit(*c.source, source_index(c, z))) {
      fail(ErrorCode::kUnsupported,
           "A cap C is not fusion (simple " + std::to_string(z) +
               " has a nontrivial projective cover)");
    }
  }

  const FpProfile pa = fp_character(*a.source);
  const FpProfile pc = fp_character(*c.source);
  const FpProfile pb = fp_character(b);
  r.support = product_support(a, c);
  r.fpdim_a = pa.cat_dim;
  r.fpdim_c = pc.cat_dim;
  r.fpdim_b = pb.cat_dim;
  for (Index z : r.intersection) r.fpdim_d += pb.dims[z] * pb.dims[z];

  if (r.support.size() == b.rank()) {
    r.mode = FpdimRatioReport::Mode::kFullSupport;
    r.fpdim_ac = pb.cat_dim;
  } else if (cartan_is_identity(b)) {
    r.mode = FpdimRatioReport::Mode::kFusionTarget;
    for (Index z : r.support) r.fpdim_ac += pb.dims[z] * pb.dims[z];
  } else {
    fail(ErrorCode::kUnsupported,
         "AC is a proper module subcategory of a nonsemisimple B; its "
         "projective covers are not part of the data");
  }
  r.lhs = r.fpdim_a * r.fpdim_c;
  r.rhs = r.fpdim_ac * r.fpdim_d;
  r.equal = relative_equal(r.lhs, r.rhs, kFpdimRelativeTolerance);
  r.inequality_holds =
      r.fpdim_b >= r.lhs / r.fpdim_d * (1.0 - kFpdimRelativeTolerance);
  return r;
}

CategoryData fusion_subcategory(const CategoryData& b, const SimpleSet& s) {
  if (!cartan_is_identity(b)) {
    fail(ErrorCode::kAutoUnsupported,
         "subcategory Cartan data is only determined for fusion B");
  }
  std::map<Index, Index> local;
  for (Index i = 0; i < s.size(); ++i) local[s[i]] = i;
  if (!local.count(b.unit)) {
    fail(ErrorCode::kInvalidEmbedding, "subcategory must contain the unit");
  }
  CategoryData out;
  for (Index z : s) out.simples.push_back(b.simples[z]);
  out.unit = local.at(b.unit);
  for (Index z : s) {
    auto it = local.find(b.dual[z]);
    if (it == local.end()) {
      fail(ErrorCode::kInvalidEmbedding, "subset is not closed under duality");
    }
    out.dual.push_back(it->second);
  }
  for (const FusionEntry& e : b.fusion) {
    auto l = local.find(e.left);
    auto r = local.find(e.right);
    if (l == local.end() || r == local.end()) continue;
    auto p = local.find(e.product);
    if (p == local.end()) {
      fail(ErrorCode::kInvalidEmbedding, "subset is not closed under fusion");
    }
    out.fusion.push_back({p->second, l->second, r->second, e.mult});
  }
  out.cartan.assign(s.size(), std::vector<std::int64_t>(s.size(), 0));
  for (Index i = 0; i < s.size(); ++i) out.cartan[i][i] = 1;
  canonicalize(out);
  return out;
}

Embedding subcategory_embedding(std::shared_ptr<const CategoryData> b,
                                const SimpleSet& s) {
  Embedding e;
  e.source = std::make_shared<const CategoryData>(fusion_subcategory(*b, s));
  e.target = std::move(b);
  e.map = s;
  return e;
}

SimpleSet subcategory_closure(const FusionRing& ring, const CategoryData& b,
                              const SimpleSet& generators) {
  std::vector<bool> in(b.rank(), false);
  std::vector<Index> members;
  auto add = [&](Index z) {
    if (!in[z]) {
      in[z] = true;
      members.push_back(z);
    }
  };
  add(b.unit);
  for (Index g : generators) {
    add(g);
    add(b.dual[g]);
  }
  // Close under products of members and duals until stable.
  for (std::size_t done = 0; done < members.size(); ++done) {
    const Index x = members[done];
    for (std::size_t j = 0; j <= done; ++j) {
      const Index y = members[j];
      for (const auto& t : ring.product(x, y)) add(t.simple);
      for (const auto& t : ring.product(y, x)) add(t.simple);
    }
    add(b.dual[x]);
  }
  SimpleSet out;
  for (Index z = 0; z < b.rank(); ++z)
    if (in[z]) out.push_back(z);
  return out;
}

std::vector<SimpleSet> subcategory_supports(const CategoryData& b) {
  const FusionRing ring(b);
  std::set<SimpleSet> seen;
  std::vector<SimpleSet> found;
  std::vector<std::size_t> frontier;
  {
    SimpleSet base = subcategory_closure(ring, b, {});
    seen.insert(base);
    found.push_back(std::move(base));
    frontier.push_back(0);
  }
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const SimpleSet base = found[idx];
      std::vector<bool> in_base(b.rank(), false);
      for (Index z : base) in_base[z] = true;
      for (Index x = 0; x < b.rank(); ++x) {
        if (in_base[x]) continue;
        SimpleSet gens = base;
        gens.push_back(x);
        SimpleSet s = subcategory_closure(ring, b, gens);
        if (seen.insert(s).second) {
          found.push_back(std::move(s));
          next.push_back(found.size() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(found.begin(), found.end(), [](const SimpleSet& l, const SimpleSet& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return l < r;
  });
  return found;
}

SimpleSet conjugate_support(const FusionRing& ring, const CategoryData& b,
                            const SimpleSet& s, Index g) {
  std::set<Index> out;
  for (Index x : s) {
    for (const auto& t : ring.product(g, x)) {
      for (const auto& u : ring.product(t.simple, b.dual[g])) out.insert(u.simple);
    }
  }
  return SimpleSet(out.begin(), out.end());
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

// Marks trivial pairs and orbit representatives under simultaneous
// conjugation by invertible simples of B and swap.
void classify_matches(const CategoryData& b,
                      std::vector<FactorizationMatch>& matches) {
  const FusionRing ring(b);
  std::vector<Index> invertibles;
  for (Index g = 0; g < b.rank(); ++g)
    if (is_invertible(ring, b, g)) invertibles.push_back(g);
  std::map<std::pair<SimpleSet, SimpleSet>, std::size_t> class_of;
  for (FactorizationMatch& m : matches) {
    const SimpleSet ia = image(m.a);
    const SimpleSet ic = image(m.c);
    m.trivial = ia.size() == 1 || ic.size() == 1;
    std::pair<SimpleSet, SimpleSet> key{ia, ic};
    for (Index g : invertibles) {
      SimpleSet ca = conjugate_support(ring, b, ia, g);
      SimpleSet cc = conjugate_support(ring, b, ic, g);
      key = std::min({key, std::pair{ca, cc}, std::pair{cc, ca}});
    }
    auto [it, inserted] = class_of.emplace(key, class_of.size());
    m.class_id = it->second;
    m.representative = inserted;
  }
}

}  // namespace

std::vector<FactorizationMatch> search_exact_factorizations(
    std::shared_ptr<const CategoryData> b, const SearchOptions& options) {
  if (!cartan_is_identity(*b)) {
    fail(ErrorCode::kAutoUnsupported,
         "AUTO search needs a fusion category; pass candidate embeddings");
  }
  const std::vector<SimpleSet> supports = subcategory_supports(*b);
  std::vector<Embedding> embeddings;
  std::vector<FpProfile> profiles;
  for (const SimpleSet& s : supports) {
    embeddings.push_back(subcategory_embedding(b, s));
    profiles.push_back(fp_character(*embeddings.back().source));
  }
  const FpProfile profile_b = fp_character(*b);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i; j < supports.size(); ++j) pairs.emplace_back(i, j);

  std::vector<std::optional<FactorizationMatch>> slots(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    // Cheap necessary condition before the full check.
    if (supports[i].size() * supports[j].size() != b->rank()) return;
    FactorizationVerdict v = check_exact_factorization(
        embeddings[i], embeddings[j], profiles[i], profiles[j], profile_b);
    if (!v.ok) return;
    // Larger factor first.
    FactorizationMatch m;
    if (supports[j].size() > supports[i].size()) {
      m.a = embeddings[j];
      m.c = embeddings[i];
      m.verdict = check_exact_factorization(embeddings[j], embeddings[i],
                                            profiles[j], profiles[i], profile_b);
    } else {
      m.a = embeddings[i];
      m.c = embeddings[j];
      m.verdict = std::move(v);
    }
    slots[k] = std::move(m);
  });
  std::vector<FactorizationMatch> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  std::sort(out.begin(), out.end(),
            [](const FactorizationMatch& l, const FactorizationMatch& r) {
              const SimpleSet la = image(l.a), ra = image(r.a);
              if (la.size() != ra.size()) return la.size() > ra.size();
              if (la != ra) return la < ra;
              return image(l.c) < image(r.c);
            });
  classify_matches(*b, out);
  return out;
}

std::vector<FactorizationMatch> search_exact_factorizations(
    std::shared_ptr<const CategoryData> b,
    const std::vector<std::pair<Embedding, Embedding>>& candidates,
    const SearchOptions& options) {
  for (const auto& [a, c] : candidates) {
    if (!(*a.target == *b) || !(*c.target == *b)) {
      fail(ErrorCode::kTargetMismatch, "candidate embedding targets another category");
    }
    check_embedding(a);
    check_embedding(c);
  }
  const FpProfile profile_b = fp_character(*b);
  std::vector<std::optional<FactorizationMatch>> slots(candidates.size());
  parallel_for(candidates.size(), options.threads, [&](std::size_t k) {
    const auto& [a, c] = candidates[k];
    FactorizationVerdict v = check_exact_factorization(
        a, c, fp_character(*a.source), fp_character(*c.source), profile_b);
    if (!v.ok) return;
    slots[k] = FactorizationMatch{a, c, std::move(v)};
  });
  std::vector<FactorizationMatch> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  classify_matches(*b, out);
  return out;
}

}  // namespace tenfact
