#include <doctest.h>

#include "checks.hpp"
#include "common.hpp"
#include "oracles.hpp"
#include "tenfact/error.hpp"

#include <set>

using namespace tenfact;
using testing_support::data_path;

namespace {

struct S3Fixture {
  std::shared_ptr<const CategoryData> b;
  Embedding a3, t12, t13, whole, trivial;

  S3Fixture() {
    const FiniteGroup g = symmetric_group(3);
    b = std::make_shared<const CategoryData>(vec_of_group(g));
    auto sub = [&](const std::string& spec) {
      return subcategory_embedding(b, parse_elements(g, spec));
    };
    a3 = sub("(),(1 2 3),(1 3 2)");
    t12 = sub("(),(1 2)");
    t13 = sub("(),(1 3)");
    whole = sub("(),(1 2),(1 3),(2 3),(1 2 3),(1 3 2)");
    trivial = sub("()");
  }
};

std::shared_ptr<const CategoryData> shared(CategoryData d) {
  return std::make_shared<const CategoryData>(std::move(d));
}

}  // namespace

TEST_SUITE("factor") {

TEST_CASE("embeddings from files") {
  const Embedding e = load_embedding(data_path("s3_a3.emb.json"));
  CHECK(e.map == std::vector<Index>{0, 3, 4});
  CHECK(embedding_problems(e).empty());
}

TEST_CASE("broken embeddings are reported") {
  auto z4 = shared(vec_of_group(cyclic_group(4)));
  auto z2 = shared(vec_of_group(cyclic_group(2)));
  CHECK(embedding_problems(Embedding{z2, z4, {0, 2}}).empty());
  CHECK_FALSE(embedding_problems(Embedding{z2, z4, {0, 1}}).empty());
  CHECK_FALSE(embedding_problems(Embedding{z2, z4, {2, 0}}).empty());
  CHECK_FALSE(embedding_problems(Embedding{z2, z4, {0, 0}}).empty());
  CHECK_THROWS_AS(check_embedding(Embedding{z2, z4, {0, 7}}), Error);
}

TEST_CASE("intersections and product supports in Vec(S3)") {
  S3Fixture f;
  CHECK(intersect(f.a3, f.t12) == SimpleSet{0});
  CHECK(intersect(f.a3, f.a3) == image(f.a3));
  CHECK(product_support(f.a3, f.t12).size() == 6);
  CHECK(product_support(f.a3, f.a3) == image(f.a3));
  CHECK(product_support(f.trivial, f.trivial) == SimpleSet{0});

  auto z4 = shared(vec_of_group(cyclic_group(4)));
  const Embedding two = subcategory_embedding(z4, {0, 2});
  CHECK(intersect(two, two) == SimpleSet{0, 2});
}

TEST_CASE("S3 = A3 . <(1 2)>") {
  S3Fixture f;
  const FactorizationVerdict v = check_exact_factorization(f.a3, f.t12);
  REQUIRE(v.ok);
  CHECK(v.fpdim_product_equal);
  const FiniteGroup g = symmetric_group(3);
  REQUIRE(v.bijection.size() == 6);
  std::set<Index> hit;
  for (const FactorPair& p : v.bijection) {
    CHECK(p.product == g.mul(f.a3.map[p.a_simple], f.t12.map[p.c_simple]));
    hit.insert(p.product);
  }
  CHECK(hit.size() == 6);
}

TEST_CASE("Vec(Z/4) with the order-two subcategory twice") {
  auto z4 = shared(vec_of_group(cyclic_group(4)));
  const Embedding two = subcategory_embedding(z4, {0, 2});
  const FactorizationVerdict v = check_exact_factorization(two, two);
  CHECK_FALSE(v.ok);
  CHECK(v.failed(kCritBijection));
  CHECK(v.failed(kCritTrivialIntersection));
  CHECK_FALSE(v.failed(kCritSimpleProducts));
  // 2 * 2 = 4: the dimension count alone does not detect the overlap.
  CHECK(v.fpdim_product_equal);
}

TEST_CASE("Rep(Z/2) in char 2 times Vec(Z/3)") {
  const Embedding l = load_embedding(data_path("rep2_x_vec3.left.emb.json"));
  const Embedding r = load_embedding(data_path("rep2_x_vec3.right.emb.json"));
  const FactorizationVerdict v = check_exact_factorization(l, r);
  CHECK(v.ok);
  CHECK_FALSE(v.failed(kCritProjectiveCovers));
  CHECK(v.fpdim_product_equal);
  CHECK(v.fpdim_b == doctest::Approx(6.0));
}

TEST_CASE("verdict is symmetric in the factors") {
  S3Fixture f;
  const std::vector<Embedding> subs = {f.a3, f.t12, f.t13, f.whole, f.trivial};
  for (const auto& x : subs)
    for (const auto& y : subs)
      CHECK(check_exact_factorization(x, y).ok == check_exact_factorization(y, x).ok);
}

TEST_CASE("canonical embeddings of Deligne products factor exactly") {
  const auto zoo = testing_support::small_builder_zoo();
  for (const auto& [na, a] : zoo)
    for (const auto& [nc, c] : zoo) {
      if (a.rank() * c.rank() > 60) continue;
      CAPTURE(na);
      CAPTURE(nc);
      const DeligneProduct b = deligne_product(a, c);
      const FactorizationVerdict v = check_exact_factorization(b.left, b.right);
      CHECK(v.ok);
      CHECK(v.fpdim_product_equal);
      CHECK(oracle::brute_force_exact(*b.data, image(b.left), a.cartan, image(b.right),
                                      c.cartan));
      const FpProfile pa = fp_character(a), pc = fp_character(c), pb = fp_character(*b.data);
      CHECK(checks::regular_identity_deviation(b.left, b.right, pa, pc, pb) <= 1e-6);
      CHECK(checks::delta_identity(b.left, b.right).holds);
    }
}

TEST_CASE("combinatorial criteria agree with the brute-force oracle") {
  for (const FiniteGroup& g : {symmetric_group(3), cyclic_group(6), dihedral_group(4),
                               direct_product(cyclic_group(2), cyclic_group(2))}) {
    auto b = shared(vec_of_group(g));
    const auto supports = subcategory_supports(*b);
    for (const auto& s1 : supports)
      for (const auto& s2 : supports) {
        const Embedding e1 = subcategory_embedding(b, s1);
        const Embedding e2 = subcategory_embedding(b, s2);
        const bool ok = check_exact_factorization(e1, e2).ok;
        CHECK(ok == oracle::brute_force_exact(*b, s1, e1.source->cartan, s2, e2.source->cartan));
      }
  }
}

TEST_CASE("criteria agree with FPdim equality plus trivial intersection") {
  for (const FiniteGroup& g : {symmetric_group(3), cyclic_group(4), cyclic_group(6),
                               dicyclic_group(2), alternating_group(4)}) {
    auto b = shared(vec_of_group(g));
    const auto supports = subcategory_supports(*b);
    for (const auto& s1 : supports)
      for (const auto& s2 : supports) {
        const Embedding e1 = subcategory_embedding(b, s1);
        const Embedding e2 = subcategory_embedding(b, s2);
        const FactorizationVerdict v = check_exact_factorization(e1, e2);
        const bool trivial_cap = intersect(e1, e2).size() == 1;
        CHECK(v.ok == (v.fpdim_product_equal && trivial_cap));
      }
  }
}

TEST_CASE("FPdim ratio on Vec(S3)") {
  S3Fixture f;
  const FpdimRatioReport r1 = fpdim_ratio_check(f.whole, f.t12);
  CHECK(r1.intersection.size() == 2);
  CHECK(r1.lhs == 12.0);
  CHECK(r1.rhs == 12.0);
  CHECK(r1.equal);

  const FpdimRatioReport r2 = fpdim_ratio_check(f.a3, f.a3);
  CHECK(r2.support.size() == 3);
  CHECK(r2.lhs == 9.0);
  CHECK(r2.rhs == 9.0);
  CHECK(r2.mode == FpdimRatioReport::Mode::kFusionTarget);
  CHECK(r2.inequality_holds);

  const FpdimRatioReport r3 = fpdim_ratio_check(f.trivial, f.trivial);
  CHECK(r3.lhs == 1.0);
  CHECK(r3.rhs == 1.0);
}

TEST_CASE("FPdim ratio needs a fusion intersection") {
  const CategoryData rep2 = rep_zp_char_p(2);
  auto b = shared(rep2);
  const Embedding id{b, b, {0}};
  CHECK_THROWS_AS(fpdim_ratio_check(id, id), Error);
}

TEST_CASE("AUTO search") {
  auto s3 = shared(vec_of_group(symmetric_group(3)));
  const auto matches = search_exact_factorizations(s3);
  std::size_t nontrivial = 0;
  std::set<std::size_t> classes;
  for (const auto& m : matches) {
    if (m.trivial) continue;
    ++nontrivial;
    classes.insert(m.class_id);
    CHECK(m.verdict.ok);
  }
  CHECK(nontrivial == 3);
  CHECK(classes.size() == 1);

  for (const auto& b : {shared(vec_of_group(cyclic_group(4))), shared(fibonacci())})
    for (const auto& m : search_exact_factorizations(b)) CHECK(m.trivial);

  CHECK_THROWS_AS(search_exact_factorizations(shared(taft_like(2))), Error);
}

TEST_CASE("AUTO search matches the powerset oracle") {
  for (const FiniteGroup& g : {symmetric_group(3), cyclic_group(6), dihedral_group(4),
                               alternating_group(4), cyclic_group(4)}) {
    auto b = shared(vec_of_group(g));
    const oracle::AutoSummary ref = oracle::brute_force_auto(*b);
    const auto matches = search_exact_factorizations(b);
    std::set<std::size_t> classes;
    for (const auto& m : matches)
      if (!m.trivial) classes.insert(m.class_id);
    CHECK(subcategory_supports(*b).size() == ref.closed_subsets);
    CHECK(matches.size() == ref.unordered_pairs);
    CHECK(classes.size() == ref.nontrivial_classes);
  }
}

TEST_CASE("search is independent of the thread count") {
  auto b = shared(vec_of_group(alternating_group(4)));
  const auto one = search_exact_factorizations(b, SearchOptions{1});
  const auto four = search_exact_factorizations(b, SearchOptions{4});
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].a.map == four[i].a.map);
    CHECK(one[i].c.map == four[i].c.map);
    CHECK(one[i].class_id == four[i].class_id);
  }
}

TEST_CASE("explicit candidates") {
  S3Fixture f;
  const auto m = search_exact_factorizations(f.b, {{f.a3, f.t12}, {f.a3, f.a3}});
  REQUIRE(m.size() == 1);
  CHECK(m[0].a.map == f.a3.map);
}

}  // TEST_SUITE
