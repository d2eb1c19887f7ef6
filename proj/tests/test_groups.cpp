#include <doctest.h>

#include "common.hpp"
#include "tenfact/error.hpp"

#include <set>

using namespace tenfact;

namespace {

Subgroup by_labels(const FiniteGroup& g, const std::string& spec) {
  return make_subgroup(g, parse_elements(g, spec));
}

// Brute force: every subset closed under multiplication that contains e.
std::size_t count_subgroups_by_subsets(const FiniteGroup& g) {
  std::size_t count = 0;
  const std::size_t n = g.order();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> g.identity() & 1)) continue;
    bool closed = true;
    for (Index a = 0; a < n && closed; ++a)
      for (Index b = 0; b < n && closed; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> g.mul(a, b) & 1)) closed = false;
    if (closed) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("subgroup counts") {
  CHECK(subgroups(cyclic_group(4)).size() == 3);
  CHECK(subgroups(symmetric_group(3)).size() == 6);
  CHECK(subgroups(dicyclic_group(2)).size() == 6);
  CHECK(subgroups(dihedral_group(4)).size() == 10);
  CHECK(subgroups(symmetric_group(4)).size() == 30);
  for (const FiniteGroup& g : {cyclic_group(6), dihedral_group(4), dicyclic_group(2),
                               direct_product(cyclic_group(2), cyclic_group(4))})
    CHECK(subgroups(g).size() == count_subgroups_by_subsets(g));
}

TEST_CASE("subgroup orders divide the group order") {
  for (const auto& ng : group_catalog()) {
    CAPTURE(ng.name);
    for (const Subgroup& h : subgroups(ng.group)) {
      CHECK(ng.group.order() % h.order() == 0);
      CHECK(is_subgroup(ng.group, h.elements));
    }
  }
}

TEST_CASE("exact factorization of groups") {
  const FiniteGroup s3 = symmetric_group(3);
  CHECK(is_exact_factorization(s3, by_labels(s3, "(),(1 2 3),(1 3 2)"), by_labels(s3, "(),(1 2)")));
  const FiniteGroup z4 = cyclic_group(4);
  const Subgroup two = make_subgroup(z4, {0, 2});
  CHECK_FALSE(is_exact_factorization(z4, two, two));
  for (const auto& ng : group_catalog())
    CHECK(is_exact_factorization(ng.group, whole_group(ng.group), trivial_subgroup(ng.group)));
}

TEST_CASE("enumerated factorizations") {
  const FiniteGroup s3 = symmetric_group(3);
  const auto fs = enumerate_exact_factorizations(s3);
  std::size_t nontrivial = 0;
  std::set<std::size_t> classes;
  for (const auto& f : fs) {
    if (f.trivial) continue;
    ++nontrivial;
    classes.insert(f.class_id);
  }
  CHECK(nontrivial == 6);
  CHECK(classes.size() == 1);

  for (const FiniteGroup& g : {cyclic_group(4), dicyclic_group(2)})
    for (const auto& f : enumerate_exact_factorizations(g)) CHECK(f.trivial);
}

TEST_CASE("enumerated factorizations are swap-symmetric bijections") {
  for (const FiniteGroup& g : {symmetric_group(3), cyclic_group(6), dihedral_group(4),
                               alternating_group(4), dihedral_group(6)}) {
    const auto fs = enumerate_exact_factorizations(g);
    std::set<std::pair<Subgroup, Subgroup>> pairs;
    for (const auto& f : fs) pairs.insert({f.first, f.second});
    for (const auto& f : fs) {
      CHECK(pairs.count({f.second, f.first}) == 1);
      CHECK(f.first.order() * f.second.order() == g.order());
      std::set<Index> products;
      for (Index a : f.first.elements)
        for (Index b : f.second.elements) products.insert(g.mul(a, b));
      CHECK(products.size() == g.order());
    }
  }
}

TEST_CASE("builders") {
  const FiniteGroup z1 = cyclic_group(1);
  CHECK(z1.order() == 1);
  const FiniteGroup s3 = symmetric_group(3);
  CHECK(s3.order() == 6);
  std::size_t central = 0;
  for (Index a = 0; a < 6; ++a) {
    bool c = true;
    for (Index b = 0; b < 6; ++b) c = c && s3.mul(a, b) == s3.mul(b, a);
    central += c;
  }
  CHECK(central == 1);
  CHECK(order_statistics(direct_product(cyclic_group(2), cyclic_group(3))) ==
        order_statistics(cyclic_group(6)));
  CHECK(dihedral_group(5).order() == 10);
  CHECK(dicyclic_group(3).order() == 12);
  CHECK(alternating_group(4).order() == 12);
  CHECK_THROWS_AS(symmetric_group(5), Error);
}

TEST_CASE("catalog") {
  std::set<std::string> names;
  for (const auto& ng : group_catalog()) {
    CHECK(ng.group.order() <= 24);
    CHECK(names.insert(ng.name).second);
  }
  CHECK(names.count("S4") == 1);
  CHECK(names.count("Q8") == 1);
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(FiniteGroup::from_table({"a", "b"}, {{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(FiniteGroup::from_table({"a", "b"}, {{0, 1}}), Error);
  // Latin square without associativity: the loop of order 5 below.
  const std::vector<std::vector<Index>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table({"e", "a", "b", "c", "d"}, loop), Error);
}

TEST_CASE("conjugation and subgroup helpers") {
  const FiniteGroup s3 = symmetric_group(3);
  const Subgroup t = by_labels(s3, "(),(1 2)");
  std::set<Subgroup> orbit;
  for (Index g = 0; g < 6; ++g) orbit.insert(conjugate(s3, t, g));
  CHECK(orbit.size() == 3);
  CHECK(generate_subgroup(s3, {s3.find("(1 2 3)")}).order() == 3);
  CHECK_THROWS_AS(make_subgroup(s3, {0, 1, 2}), Error);
}

}  // TEST_SUITE
