#pragma once

// Finite groups given by Cayley tables, their subgroups and exact
// factorizations G = G1 G2.

#include "tenfact/category.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tenfact {

class FiniteGroup {
 public:
  // Validates the table and throws kInvalidData on failure. Associativity is
  // checked exhaustively up to order 64; above that on a seeded random
  // sample of triples plus every triple (a, b, g) with g in a generating set.
  static FiniteGroup from_table(std::vector<std::string> labels,
                                std::vector<std::vector<Index>> table,
                                std::uint64_t seed = 0x5eed);

  std::size_t order() const { return labels_.size(); }
  Index identity() const { return identity_; }
  Index mul(Index a, Index b) const { return table_[a * order() + b]; }
  Index inverse(Index a) const { return inverses_[a]; }
  const std::string& label(Index a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<std::vector<Index>> table() const;

  // Index of the element with this label, or npos.
  Index find(const std::string& label) const;
  static constexpr Index npos = static_cast<Index>(-1);

  Index element_order(Index a) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Index> table_;
  std::vector<Index> inverses_;
  Index identity_ = 0;
};

inline constexpr std::size_t kSubgroupOrderLimit = 10000;

struct Subgroup {
  std::vector<Index> elements;  // sorted

  std::size_t order() const { return elements.size(); }
  bool contains(Index g) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup&, const Subgroup&) = default;
};

bool is_subgroup(const FiniteGroup& g, const std::vector<Index>& elements);
// Throws kNotSubgroup unless elements form a subgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<Index> elements);
Subgroup generate_subgroup(const FiniteGroup& g,
                           const std::vector<Index>& generators);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Index by);

// All subgroups, sorted by (order, elements).
std::vector<Subgroup> subgroups(const FiniteGroup& g,
                                std::size_t order_limit = kSubgroupOrderLimit);

// class_id[i] is the conjugacy class of subs[i]; ids are numbered in order
// of first appearance.
std::vector<std::size_t> conjugacy_class_ids(const FiniteGroup& g,
                                             const std::vector<Subgroup>& subs);

bool is_exact_factorization(const FiniteGroup& g, const Subgroup& h1,
                            const Subgroup& h2);

struct GroupFactorization {
  Subgroup first;
  Subgroup second;
  bool trivial = false;
  // First pair (in enumeration order) of its orbit under simultaneous
  // conjugation and swap.
  bool representative = false;
  std::size_t class_id = 0;
};

std::vector<GroupFactorization> enumerate_exact_factorizations(
    const FiniteGroup& g, std::size_t order_limit = kSubgroupOrderLimit);

// Subgroup as a group in its own right; embedding[i] is the index in g of
// element i.
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h,
                              std::vector<Index>* embedding = nullptr);

// Builders.
FiniteGroup cyclic_group(std::size_t n);
FiniteGroup dihedral_group(std::size_t n);   // order 2n
FiniteGroup dicyclic_group(std::size_t n);   // order 4n; n = 2 is Q8
FiniteGroup symmetric_group(std::size_t n);  // n <= 4
FiniteGroup alternating_group(std::size_t n);  // n <= 4
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// Sorted multiset of element orders; an isomorphism invariant.
std::vector<Index> order_statistics(const FiniteGroup& g);

struct NamedGroup {
  std::string name;
  FiniteGroup group;
};

// Small groups shipped with the tool: every group here has order <= 24.
std::vector<NamedGroup> group_catalog();

}  // namespace tenfact
