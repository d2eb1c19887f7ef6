#pragma once

// Grothendieck-level data of a finite tensor category: simples, fusion
// multiplicities, duality and the Cartan matrix of projective covers.

#include "tenfact/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tenfact {

using Index = std::size_t;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using Permutation = std::vector<Index>;

// N^product_{left,right} = mult, i.e. [left (x) right : product] = mult.
struct FusionEntry {
  Index product = 0;
  Index left = 0;
  Index right = 0;
  std::int64_t mult = 0;

  friend bool operator==(const FusionEntry&, const FusionEntry&) = default;
};

struct CategoryData {
  std::vector<std::string> simples;
  Index unit = 0;
  Permutation dual;
  std::vector<FusionEntry> fusion;
  // cartan[x][y] = [P(x) : y].
  IntMatrix cartan;
  std::optional<Permutation> dual_d;
  // Free-form annotations; never read by Grothendieck-level operations.
  std::map<std::string, std::string> metadata;

  std::size_t rank() const { return simples.size(); }

  friend bool operator==(const CategoryData&, const CategoryData&) = default;
};

// Class [M] in Gr(A), coefficients over simples.
struct GrVector {
  std::vector<std::int64_t> coeffs;

  friend bool operator==(const GrVector&, const GrVector&) = default;
};

// Element of K0(A) (x) R: entry x is the multiplicity of P(x).
struct K0Vector {
  std::vector<double> mults;
};

GrVector basis_vector(std::size_t n, Index i);

// Throws kMalformedInput unless sizes, index ranges and permutations are
// consistent. Does not check any algebraic axiom.
void check_well_formed(const CategoryData& data);

// Sorts fusion entries by (left, right, product), merges duplicates and
// drops zero multiplicities.
void canonicalize(CategoryData& data);

Permutation inverse_permutation(const Permutation& p);
Index left_dual(const CategoryData& data, Index x);

// Immutable product index over a CategoryData. Built eagerly; safe to share
// read-only across threads.
class FusionRing {
 public:
  struct Term {
    Index simple;
    std::int64_t mult;
  };

  explicit FusionRing(const CategoryData& data);

  std::size_t rank() const { return n_; }
  Index unit() const { return unit_; }

  // Nonzero constituents of x (x) y, sorted by simple index.
  const std::vector<Term>& product(Index x, Index y) const {
    return products_[x * n_ + y];
  }
  std::int64_t multiplicity(Index z, Index x, Index y) const;

  GrVector multiply(const GrVector& v, const GrVector& w) const;
  std::vector<double> multiply(const std::vector<double>& v,
                               const std::vector<double>& w) const;

 private:
  std::size_t n_;
  Index unit_;
  std::vector<std::vector<Term>> products_;
};

struct Violation {
  std::string kind;
  std::vector<Index> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Total number of failing instances per kind (violations keeps at most
  // kMaxWitnessesPerKind of them).
  std::map<std::string, std::size_t> counts;

  static constexpr std::size_t kMaxWitnessesPerKind = 32;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const { return counts.count(kind) != 0; }
};

ValidationReport validate(const CategoryData& data);

// (N_x)[z][y] = N^z_{x,y}.
IntMatrix fusion_matrix(const CategoryData& data, Index x);

GrVector gr_product(const CategoryData& data, const GrVector& v,
                    const GrVector& w);

// [P(x)] in Gr(A): row x of the Cartan matrix.
GrVector projective_class(const CategoryData& data, Index x);

// Gr-image of a K0Vector, mults * Cartan.
std::vector<double> gr_image(const CategoryData& data, const K0Vector& p);

// Applies the duality permutation to the classes: [M] -> [M*].
GrVector dual_class(const CategoryData& data, const GrVector& v);

// The simple z with P(y)* = P(z), read off the Cartan rows. Uses the
// supplied dual_d when several rows match.
Index dual_d(const CategoryData& data, Index y);

struct ProjectiveDecomposition {
  enum class Status { kOk, kSingular, kNotProjectiveClass };

  Status status = Status::kOk;
  // Exact solution of m * Cartan = v; empty when kSingular.
  std::vector<Rational> mults;

  bool ok() const { return status == Status::kOk; }
  K0Vector to_k0() const;
};

std::string_view status_name(ProjectiveDecomposition::Status status);

ProjectiveDecomposition decompose_projective(const CategoryData& data,
                                             const GrVector& v);

// dim Hom(sum p_x P(x), M) = sum p_x [M : x]. p must be integral.
std::int64_t hom_from_projective(const CategoryData& data, const K0Vector& p,
                                 const GrVector& m);

bool cartan_is_identity(const CategoryData& data);

}  // namespace tenfact
