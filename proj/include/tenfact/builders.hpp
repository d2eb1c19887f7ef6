#pragma once

// Constructors for category data: pointed categories of finite groups,
// small nonsemisimple examples, Deligne products and opposites.

#include "tenfact/category.hpp"
#include "tenfact/factor.hpp"
#include "tenfact/groups.hpp"

#include <cstddef>
#include <memory>

namespace tenfact {

// Vec(G): simples are the elements, fusion is the group law.
CategoryData vec_of_group(const FiniteGroup& g);

// Rep(Z/p) in characteristic p: one simple with Cartan [p].
CategoryData rep_zp_char_p(std::size_t p);

// Simples Z/n with group fusion and all-ones Cartan. The Grothendieck data
// cannot pin down Y^D, so dual_d is set to Y -> -Y + (n - 1).
CategoryData taft_like(std::size_t n);

// Rings {1, tau} with tau (x) tau = 1 + tau.
CategoryData fibonacci();

struct DeligneProduct {
  std::shared_ptr<const CategoryData> data;
  Embedding left;   // X -> (X, 1)
  Embedding right;  // Y -> (1, Y)
};

// Simples (a, c) at index a * |C| + c.
DeligneProduct deligne_product(const CategoryData& a, const CategoryData& c);

CategoryData opposite(const CategoryData& a);

bool is_prime(std::size_t p);

}  // namespace tenfact
