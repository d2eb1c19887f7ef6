#include "tenfact/builders.hpp"

#include "tenfact/error.hpp"

#include <string>

namespace tenfact {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

CategoryData vec_of_group(const FiniteGroup& g) {
  CategoryData d;
  d.simples = g.labels();
  d.unit = g.identity();
  for (Index a = 0; a < g.order(); ++a) d.dual.push_back(g.inverse(a));
  for (Index a = 0; a < g.order(); ++a)
    for (Index b = 0; b < g.order(); ++b) d.fusion.push_back({g.mul(a, b), a, b, 1});
  d.cartan = identity_matrix(g.order());
  d.metadata["builder"] = "vec";
  d.metadata["omega"] = "trivial";
  canonicalize(d);
  return d;
}

CategoryData rep_zp_char_p(std::size_t p) {
  if (!is_prime(p)) fail(ErrorCode::kInvalidData, std::to_string(p) + " is not prime");
  CategoryData d;
  d.simples = {"1"};
  d.unit = 0;
  d.dual = {0};
  d.fusion = {{0, 0, 0, 1}};
  d.cartan = {{static_cast<std::int64_t>(p)}};
  d.metadata["builder"] = "rep-zp";
  d.metadata["characteristic"] = std::to_string(p);
  return d;
}

CategoryData taft_like(std::size_t n) {
  if (n < 2) fail(ErrorCode::kInvalidData, "taft_like needs n >= 2");
  CategoryData d;
  for (std::size_t i = 0; i < n; ++i) {
    d.simples.push_back("g" + std::to_string(i));
    d.dual.push_back((n - i) % n);
  }
  d.unit = 0;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) d.fusion.push_back({(a + b) % n, a, b, 1});
  d.cartan.assign(n, std::vector<std::int64_t>(n, 1));
  Permutation dd;
  for (std::size_t y = 0; y < n; ++y) dd.push_back((2 * n - 1 - y) % n);
  d.dual_d = dd;
  d.metadata["builder"] = "taft";
  d.metadata["dualD"] = "Y^D = -Y + (n-1) mod n";
  canonicalize(d);
  return d;
}

CategoryData fibonacci() {
  CategoryData d;
  d.simples = {"1", "tau"};
  d.unit = 0;
  d.dual = {0, 1};
  d.fusion = {{0, 0, 0, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}};
  d.cartan = identity_matrix(2);
  d.metadata["builder"] = "fibonacci";
  canonicalize(d);
  return d;
}

DeligneProduct deligne_product(const CategoryData& a, const CategoryData& c) {
  check_well_formed(a);
  check_well_formed(c);
  const std::size_t na = a.rank();
  const std::size_t nc = c.rank();
  auto idx = [nc](Index x, Index y) { return x * nc + y; };
  CategoryData d;
  for (Index x = 0; x < na; ++x) {
    for (Index y = 0; y < nc; ++y) {
      d.simples.push_back("(" + a.simples[x] + "," + c.simples[y] + ")");
      d.dual.push_back(idx(a.dual[x], c.dual[y]));
    }
  }
  d.unit = idx(a.unit, c.unit);
  for (const FusionEntry& e : a.fusion) {
    for (const FusionEntry& f : c.fusion) {
      d.fusion.push_back({idx(e.product, f.product), idx(e.left, f.left),
                          idx(e.right, f.right), e.mult * f.mult});
    }
  }
  d.cartan.assign(na * nc, std::vector<std::int64_t>(na * nc, 0));
  for (Index x = 0; x < na; ++x)
    for (Index y = 0; y < nc; ++y)
      for (Index u = 0; u < na; ++u)
        for (Index v = 0; v < nc; ++v)
          d.cartan[idx(x, y)][idx(u, v)] = a.cartan[x][u] * c.cartan[y][v];
  if (a.dual_d || c.dual_d) {
    Permutation dd(na * nc);
    for (Index x = 0; x < na; ++x)
      for (Index y = 0; y < nc; ++y)
        dd[idx(x, y)] = idx(a.dual_d ? (*a.dual_d)[x] : dual_d(a, x),
                            c.dual_d ? (*c.dual_d)[y] : dual_d(c, y));
    d.dual_d = dd;
  }
  d.metadata["builder"] = "deligne";
  canonicalize(d);

  DeligneProduct out;
  out.data = std::make_shared<const CategoryData>(std::move(d));
  auto src_a = std::make_shared<const CategoryData>(a);
  auto src_c = std::make_shared<const CategoryData>(c);
  out.left = {src_a, out.data, {}};
  out.right = {src_c, out.data, {}};
  for (Index x = 0; x < na; ++x) out.left.map.push_back(idx(x, c.unit));
  for (Index y = 0; y < nc; ++y) out.right.map.push_back(idx(a.unit, y));
  return out;
}

CategoryData opposite(const CategoryData& a) {
  CategoryData d = a;
  for (FusionEntry& e : d.fusion) std::swap(e.left, e.right);
  d.dual = inverse_permutation(a.dual);
  if (a.dual_d) d.dual_d = inverse_permutation(*a.dual_d);
  canonicalize(d);
  return d;
}

}  // namespace tenfact
