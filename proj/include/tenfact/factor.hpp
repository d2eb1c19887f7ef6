#pragma once

// Tensor subcategories given as embeddings of category data, the closure AC,
// and the Grothendieck-level exact factorization test B = A . C.

#include "tenfact/category.hpp"
#include "tenfact/fpdim.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tenfact {

using SimpleSet = std::vector<Index>;  // sorted target indices

struct Embedding {
  std::shared_ptr<const CategoryData> source;
  std::shared_ptr<const CategoryData> target;
  std::vector<Index> map;  // source simple -> target simple
};

// Empty when the map is an injective, unit/dual/fusion-preserving map whose
// image is closed under constituents of products.
std::vector<std::string> embedding_problems(const Embedding& e);
void check_embedding(const Embedding& e);  // throws kInvalidEmbedding

SimpleSet image(const Embedding& e);

SimpleSet intersect(const Embedding& a, const Embedding& c);

// Least set containing 1 and closed under S -> constituents of X (x) S (x) Y
// for X in image(a), Y in image(c).
SimpleSet product_support(const Embedding& a, const Embedding& c);

struct CriterionFailure {
  std::string criterion;
  std::vector<Index> witness;
  std::string detail;
};

inline constexpr const char* kCritSimpleProducts = "simple-products";
inline constexpr const char* kCritBijection = "bijection";
inline constexpr const char* kCritProjectiveCovers = "projective-covers";
inline constexpr const char* kCritTrivialIntersection = "trivial-intersection";

inline constexpr double kFpdimRelativeTolerance = 1e-6;

struct FactorPair {
  Index a_simple;  // source index in A
  Index c_simple;  // source index in C
  Index product;   // target simple X (x) Y
};

// Grothendieck-level exact factorization verdict. ok covers the four
// combinatorial criteria; the FPdim product is reported alongside.
struct FactorizationVerdict {
  bool ok = false;
  std::vector<CriterionFailure> failures;
  std::vector<FactorPair> bijection;  // filled when ok

  double fpdim_a = 0.0;
  double fpdim_c = 0.0;
  double fpdim_b = 0.0;
  bool fpdim_product_equal = false;

  bool failed(const std::string& criterion) const;
};

FactorizationVerdict check_exact_factorization(const Embedding& a,
                                               const Embedding& c);
// Same, reusing FP profiles of A, C and B.
FactorizationVerdict check_exact_factorization(const Embedding& a,
                                               const Embedding& c,
                                               const FpProfile& profile_a,
                                               const FpProfile& profile_c,
                                               const FpProfile& profile_b);

struct FpdimRatioReport {
  enum class Mode { kFullSupport, kFusionTarget };

  Mode mode = Mode::kFullSupport;
  SimpleSet intersection;
  SimpleSet support;
  double fpdim_a = 0.0;
  double fpdim_c = 0.0;
  double fpdim_b = 0.0;
  double fpdim_d = 0.0;
  double fpdim_ac = 0.0;
  double lhs = 0.0;  // FPdim(A) FPdim(C)
  double rhs = 0.0;  // FPdim(AC) FPdim(D)
  bool equal = false;
  bool inequality_holds = false;  // FPdim(B) >= lhs / FPdim(D)
};

// Throws kUnsupported when A cap C is not fusion, or when FPdim(AC) would
// need module-category projective covers (AC != B and B not fusion).
FpdimRatioReport fpdim_ratio_check(const Embedding& a, const Embedding& c);

// Full subcategory of a fusion category on a fusion- and dual-closed set.
CategoryData fusion_subcategory(const CategoryData& b, const SimpleSet& s);
Embedding subcategory_embedding(std::shared_ptr<const CategoryData> b,
                                const SimpleSet& s);

// Smallest fusion- and dual-closed set containing 1 and the generators.
SimpleSet subcategory_closure(const FusionRing& ring, const CategoryData& b,
                              const SimpleSet& generators);

// All fusion- and dual-closed subsets containing 1, sorted by (size,
// elements).
std::vector<SimpleSet> subcategory_supports(const CategoryData& b);

// {constituents of g (x) s (x) g*} for an invertible simple g.
SimpleSet conjugate_support(const FusionRing& ring, const CategoryData& b,
                            const SimpleSet& s, Index g);

struct FactorizationMatch {
  Embedding a;
  Embedding c;
  FactorizationVerdict verdict;
  bool trivial = false;
  // First match (in output order) of its orbit under simultaneous
  // conjugation by invertible simples of B and swap.
  bool representative = false;
  std::size_t class_id = 0;
};

struct SearchOptions {
  unsigned threads = 1;
};

// AUTO mode: every subcategory pair of a fusion B. Throws kAutoUnsupported
// for non-fusion B. Each passing unordered pair appears once, the larger
// factor first.
std::vector<FactorizationMatch> search_exact_factorizations(
    std::shared_ptr<const CategoryData> b, const SearchOptions& options = {});

// Explicit mode: checks the supplied pairs and returns the passing ones.
std::vector<FactorizationMatch> search_exact_factorizations(
    std::shared_ptr<const CategoryData> b,
    const std::vector<std::pair<Embedding, Embedding>>& candidates,
    const SearchOptions& options = {});

}  // namespace tenfact
