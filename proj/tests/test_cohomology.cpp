#include <doctest.h>

#include "common.hpp"
#include "oracles.hpp"
#include "tenfact/cohomology.hpp"
#include "tenfact/error.hpp"

using namespace tenfact;

namespace {

std::vector<Integer> ints(std::initializer_list<int> v) {
  return std::vector<Integer>(v.begin(), v.end());
}

// Smallest k with x | |G|^k, or -1.
int group_order_power_bound(const FiniteGroup& g, const Integer& x) {
  Integer p = 1;
  for (int k = 0; k < 64; ++k) {
    if (p % x == 0) return k;
    p *= g.order();
  }
  return -1;
}

std::vector<FiniteGroup> groups_up_to(std::size_t n) {
  std::vector<FiniteGroup> out;
  for (const auto& ng : group_catalog())
    if (ng.group.order() <= n) out.push_back(ng.group);
  return out;
}

}  // namespace

TEST_SUITE("cohomology") {

TEST_CASE("cell indexing") {
  const FiniteGroup g = symmetric_group(3);
  const CellIndex c(g, 3);
  CHECK(c.size() == 125);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.encode(c.decode(i)) == i);
  CHECK(c.encode({0, 1, 2}) == CellIndex::npos);
  const CellIndex full(g, 2, false);
  CHECK(full.size() == 36);
  // Most significant position first.
  CHECK(c.decode(1) == std::vector<Index>{1, 1, 2});
}

TEST_CASE("differential examples") {
  const FiniteGroup z2 = cyclic_group(2);
  IntCochain c = zero_cochain(z2, 3);
  CHECK(bar_differential(z2, c).is_zero());
  c.values[0] = 1;
  const IntCochain dc = bar_differential(z2, c);
  CHECK(cochain_value(z2, dc, {1, 1, 1, 1}) == 2);

  const FiniteGroup s3 = symmetric_group(3);
  IntCochain k = zero_cochain(s3, 0);
  k.values[0] = 5;
  CHECK(bar_differential(s3, k).is_zero());
}

TEST_CASE("d o d = 0") {
  for (const FiniteGroup& g : groups_up_to(6)) {
    CAPTURE(g.order());
    for (bool normalized : {true, false}) {
      if (!normalized && g.order() > 4) continue;
      for (std::size_t n = 0; n <= 3; ++n) {
        const SparseIntMatrix d1 = differential_matrix(g, n, normalized);
        const SparseIntMatrix d2 = differential_matrix(g, n + 1, normalized);
        bool zero = true;
        for (std::size_t j = 0; j < d1.cols && zero; ++j) {
          std::vector<Integer> e(d1.cols, 0);
          e[j] = 1;
          for (const auto& x : d2.multiply(d1.multiply(e))) zero = zero && x == 0;
        }
        CHECK(zero);
      }
    }
  }
}

TEST_CASE("H^4 of small groups") {
  CHECK(h4_integral(cyclic_group(1)).invariant_factors.empty());
  for (int n = 2; n <= 6; ++n) CHECK(h4_integral(cyclic_group(n)).invariant_factors == ints({n}));
  const FiniteGroup v4 = direct_product(cyclic_group(2), cyclic_group(2));
  CHECK(h4_integral(v4).invariant_factors == ints({2, 2, 2}));
  CHECK(h4_integral(symmetric_group(3)).invariant_factors == ints({6}));
  CHECK(h4_integral(dihedral_group(4)).invariant_factors == ints({2, 2, 4}));
  CHECK(h4_integral(dicyclic_group(2)).invariant_factors == ints({8}));
}

TEST_CASE("normalized and full bar complexes agree") {
  for (const FiniteGroup& g : groups_up_to(6)) {
    CAPTURE(g.order());
    CHECK(h4_integral(g).invariant_factors == h4_invariant_factors_unnormalized(g));
  }
}

TEST_CASE("generators, witnesses and exponents") {
  for (const auto& ng : group_catalog()) {
    if (ng.group.order() > 8) continue;
    CAPTURE(ng.name);
    const FiniteGroup& g = ng.group;
    const CohomologyGroup h = h4_integral(g);
    REQUIRE(h.generators.size() == h.invariant_factors.size());
    for (std::size_t i = 0; i < h.generators.size(); ++i) {
      const Integer& d = h.invariant_factors[i];
      CHECK(is_cocycle(g, h.generators[i]));
      CHECK(Integer(g.order()) % d == 0);
      CHECK(group_order_power_bound(g, d) >= 0);
      IntCochain dz = bar_differential(g, h.witnesses[i]);
      IntCochain scaled = h.generators[i];
      for (auto& v : scaled.values) v *= d;
      CHECK(dz == scaled);
      CHECK_FALSE(h.is_trivial(h.generators[i]));
      const QZCochain w = omega_from_z(h, h.generators[i]);
      CHECK(is_qz_cocycle(g, w));
    }
    if (g.order() <= 6) {
      REQUIRE(h.rank_d4.has_value());
      CHECK(h.rank_d3 + *h.rank_d4 == CellIndex(g, 4).size());
    }
    CHECK(group_order_power_bound(g, h.order()) >= 0);
  }
}

TEST_CASE("cyclic 3-cocycles in closed form") {
  for (std::size_t n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const FiniteGroup g = cyclic_group(n);
    const QZCochain w = oracle::cyclic_omega(g);
    CHECK(is_qz_cocycle(g, w));
    const CohomologyGroup h = h4_integral(g);
    const IntCochain z = connecting_map(g, w);
    REQUIRE(is_cocycle(g, z));
    CHECK_FALSE(h.is_trivial(z));
    const auto coords = h.coordinates(z);
    REQUIRE(coords.size() == 1);
    CHECK(gcd(coords[0], Integer(n)) == 1);
    IntCochain nz = z;
    for (auto& v : nz.values) v *= n;
    IntCochain witness;
    REQUIRE(h.is_trivial(nz, &witness));
    CHECK(bar_differential(g, witness) == nz);
  }
}

TEST_CASE("omega from an integral cocycle") {
  const FiniteGroup z2 = cyclic_group(2);
  const QZCochain zero = omega_from_z(z2, zero_cochain(z2, 4));
  for (const auto& v : zero.values) CHECK(v == 0);
  const CohomologyGroup h = h4_integral(z2);
  const QZCochain w = omega_from_z(h, h.generators[0]);
  CHECK(cochain_value(z2, w, {1, 1, 1}) == Rational(1, 2));

  const FiniteGroup z3 = cyclic_group(3);
  const CohomologyGroup h3 = h4_integral(z3);
  const QZCochain w3 = omega_from_z(h3, h3.generators[0]);
  const IntCochain back = connecting_map(z3, w3);
  CHECK(h3.coordinates(back) == h3.coordinates(h3.generators[0]));
  const auto ref = h3.coordinates(connecting_map(z3, oracle::cyclic_omega(z3)));
  CHECK((ref[0] == 1 || ref[0] == 2));

  IntCochain bad = zero_cochain(z3, 4);
  bad.values[0] = 1;
  REQUIRE_FALSE(is_cocycle(z3, bad));
  CHECK_THROWS_AS(omega_from_z(h3, bad), Error);
}

TEST_CASE("restriction") {
  const FiniteGroup z4 = cyclic_group(4);
  const CohomologyGroup h = h4_integral(z4);
  const IntCochain& z = h.generators[0];
  CHECK(restrict_cochain(z4, z, trivial_subgroup(z4)).values.empty());
  CHECK(restrict_cochain(z4, z, whole_group(z4)) == z);

  const Subgroup two = make_subgroup(z4, {0, 2});
  const FiniteGroup z2 = subgroup_as_group(z4, two);
  const IntCochain r = restrict_cochain(z4, z, two);
  const CohomologyGroup h2 = h4_integral(z2);
  CHECK_FALSE(h2.is_trivial(r));
  IntCochain r2 = r;
  for (auto& v : r2.values) v *= 2;
  CHECK(h2.is_trivial(r2));

  const FiniteGroup s3 = symmetric_group(3);
  CHECK_THROWS_AS(restrict_cochain(s3, zero_cochain(s3, 4), Subgroup{{0, 1, 2}}), Error);
}

TEST_CASE("triviality of classes") {
  const FiniteGroup z2 = cyclic_group(2);
  IntCochain w;
  CHECK(is_trivial_class(z2, zero_cochain(z2, 4), &w));
  const CohomologyGroup h = h4_integral(z2);
  CHECK_FALSE(is_trivial_class(z2, h.generators[0]));
  IntCochain twice = h.generators[0];
  for (auto& v : twice.values) v *= 2;
  REQUIRE(is_trivial_class(z2, twice, &w));
  CHECK(bar_differential(z2, w) == twice);
}

TEST_CASE("finite kernels") {
  const FiniteKernel k = finite_kernel(ints({4}), ints({2}), {ints({1})});
  CHECK(k.invariant_factors == ints({2}));
  const FiniteKernel inj = finite_kernel(ints({6}), ints({2, 3}), {ints({1}), ints({1})});
  CHECK(inj.invariant_factors.empty());
  const FiniteKernel all = finite_kernel(ints({2, 2}), ints({}), {});
  CHECK(all.invariant_factors == ints({2, 2}));
}

TEST_CASE("pointed classification") {
  const FiniteGroup s3 = symmetric_group(3);
  const Subgroup a3 = make_subgroup(s3, parse_elements(s3, "(),(1 2 3),(1 3 2)"));
  const Subgroup t = make_subgroup(s3, parse_elements(s3, "(),(1 2)"));
  const PointedClassification pc = classify_pointed(s3, a3, t);
  CHECK(pc.invariant_factors.empty());
  CHECK(pc.order() == 1);
  CHECK(oracle::classify_by_enumeration(s3, a3, t, pc.ambient) == 1);

  const FiniteGroup z6 = cyclic_group(6);
  const Subgroup s2 = make_subgroup(z6, {0, 3});
  const Subgroup s3b = make_subgroup(z6, {0, 2, 4});
  const PointedClassification pz = classify_pointed(z6, s2, s3b);
  CHECK(pz.order() == 1);
  CHECK(oracle::classify_by_enumeration(z6, s2, s3b, pz.ambient) == 1);

  CHECK_THROWS_AS(classify_pointed(s3, a3, a3), Error);
  CHECK_THROWS_AS(classify_pointed(s3, a3, Subgroup{{0, 1, 2}}), Error);
}

TEST_CASE("kernel generators restrict trivially") {
  // D4 = <r> . <s> with <r> cyclic of order 4: a nontrivial kernel.
  const FiniteGroup d4 = dihedral_group(4);
  std::vector<Subgroup> subs = subgroups(d4);
  for (const auto& f : enumerate_exact_factorizations(d4)) {
    if (f.trivial) continue;
    const PointedClassification pc = classify_pointed(d4, f.first, f.second);
    CHECK(oracle::classify_by_enumeration(d4, f.first, f.second, pc.ambient) == pc.order());
    for (const auto& z : pc.generator_cocycles) {
      CHECK(is_trivial_class(subgroup_as_group(d4, f.first), restrict_cochain(d4, z, f.first)));
      CHECK(is_trivial_class(subgroup_as_group(d4, f.second), restrict_cochain(d4, z, f.second)));
    }
  }
}

TEST_CASE("one factor equal to G") {
  for (const auto& f : testing_support::shipped_group_files()) {
    CAPTURE(f);
    const FiniteGroup g = load_group(testing_support::data_path(f));
    const PointedClassification pc = classify_pointed(g, whole_group(g), trivial_subgroup(g));
    CHECK(pc.order() == 1);
    CHECK(pc.factor_is_ambient);
  }
  // Also along the full computation for a small group.
  const FiniteGroup s3 = symmetric_group(3);
  const CohomologyGroup h = h4_integral(s3);
  CHECK(oracle::classify_by_enumeration(s3, whole_group(s3), trivial_subgroup(s3), h) == 1);
}

TEST_CASE("order limit") {
  try {
    h4_integral(cyclic_group(9));
    FAIL("expected a size limit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeLimit);
  }
}

}  // TEST_SUITE
