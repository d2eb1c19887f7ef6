#pragma once

// H^3(G, Q/Z) computed as H^4(G, Z) over the normalized bar complex with
// trivial coefficients; restriction to subgroups and the subgroup of classes
// trivial on both factors of an exact factorization.

#include "tenfact/groups.hpp"
#include "tenfact/integer.hpp"
#include "tenfact/smith.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace tenfact {

// Cells of C^n: tuples (g_1, ..., g_n), indexed with g_1 most significant.
// Normalized cells use only non-identity elements.
class CellIndex {
 public:
  CellIndex(const FiniteGroup& g, std::size_t degree, bool normalized = true);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return size_; }
  // npos when the tuple contains the identity in the normalized complex.
  std::size_t encode(const std::vector<Index>& tuple) const;
  std::vector<Index> decode(std::size_t cell) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t degree_;
  std::size_t size_;
  std::size_t base_;
  std::vector<Index> digits_;  // digit -> element
  std::vector<std::size_t> digit_of_;  // element -> digit or npos
};

struct IntCochain {
  std::size_t degree = 0;
  std::vector<Integer> values;  // over normalized cells

  friend bool operator==(const IntCochain&, const IntCochain&) = default;
  bool is_zero() const;
};

// Values are rationals in [0, 1).
struct QZCochain {
  std::size_t degree = 3;
  std::vector<Rational> values;
};

IntCochain zero_cochain(const FiniteGroup& g, std::size_t degree);
Integer cochain_value(const FiniteGroup& g, const IntCochain& c,
                      const std::vector<Index>& tuple);
Rational cochain_value(const FiniteGroup& g, const QZCochain& c,
                       const std::vector<Index>& tuple);

IntCochain bar_differential(const FiniteGroup& g, const IntCochain& c);
// Same formula over the rationals, without reduction mod 1.
std::vector<Rational> bar_differential(const FiniteGroup& g, std::size_t degree,
                                       const std::vector<Rational>& values);

// Matrix of d: C^n -> C^{n+1}; rows are (n+1)-cells.
SparseIntMatrix differential_matrix(const FiniteGroup& g, std::size_t degree,
                                    bool normalized = true);

bool is_cocycle(const FiniteGroup& g, const IntCochain& c);
// d(omega) = 0 mod 1.
bool is_qz_cocycle(const FiniteGroup& g, const QZCochain& omega);

// [d(lift of omega)]: the integral 4-cocycle representing omega.
IntCochain connecting_map(const FiniteGroup& g, const QZCochain& omega);

// Rank of d: C^n -> C^{n+1} modulo 2^31 - 1 by dense elimination.
std::size_t rank_mod_m31(const SparseIntMatrix& a);

inline constexpr std::size_t kGuaranteedCohomologyOrder = 8;

struct CohomologyOptions {
  std::size_t order_limit = kGuaranteedCohomologyOrder;
  // Confirm rank d3 + rank d4 = |C^4| modulo a prime when d4 has at most
  // this many entries; 0 disables the check.
  std::size_t d4_check_max_entries = std::size_t{1} << 22;
  SmithOptions smith;
};

struct CohomologyGroup {
  FiniteGroup group;
  std::vector<Integer> invariant_factors;  // each > 1, d_1 | d_2 | ...
  std::vector<IntCochain> generators;      // degree 4 cocycles
  std::vector<IntCochain> witnesses;       // degree 3, d w_i = d_i z_i
  std::size_t rank_d3 = 0;
  std::optional<std::size_t> rank_d4;      // set when the mod-p check ran
  std::shared_ptr<const SmithForm> smith;  // of d3

  Integer order() const;
  // Coordinates of the class of a 4-cocycle, entry i taken mod d_i.
  // Throws kNotCocycle.
  std::vector<Integer> coordinates(const IntCochain& z) const;
  bool is_trivial(const IntCochain& z, IntCochain* witness = nullptr) const;
  IntCochain combination(const std::vector<Integer>& coeffs) const;
};

// Throws kSizeLimit above options.order_limit.
CohomologyGroup h4_integral(const FiniteGroup& g, const CohomologyOptions& options = {});

// Torsion of coker d3 on the full (non-normalized) bar complex.
std::vector<Integer> h4_invariant_factors_unnormalized(const FiniteGroup& g,
                                                       const SmithOptions& options = {});

QZCochain omega_from_z(const CohomologyGroup& h, const IntCochain& z);
QZCochain omega_from_z(const FiniteGroup& g, const IntCochain& z,
                       const CohomologyOptions& options = {});

// Restriction along h <= g. The result lives on subgroup_as_group(g, h).
IntCochain restrict_cochain(const FiniteGroup& g, const IntCochain& z,
                            const Subgroup& h);

bool is_trivial_class(const FiniteGroup& g, const IntCochain& z,
                      IntCochain* witness = nullptr,
                      const CohomologyOptions& options = {});

struct PointedClassification {
  CohomologyGroup ambient;
  CohomologyGroup first;
  CohomologyGroup second;
  // restriction[l][k]: coordinate l of the restriction of generator k; rows
  // for the first factor come first.
  std::vector<std::vector<Integer>> restriction;
  std::vector<Integer> invariant_factors;  // of the kernel
  // Kernel generators as coordinates in the ambient generators.
  std::vector<std::vector<Integer>> generators;
  std::vector<IntCochain> generator_cocycles;
  // Set when one factor is all of G. Restriction to it is the identity, so
  // the kernel is trivial and no cohomology is computed.
  bool factor_is_ambient = false;

  Integer order() const;
};

// Kernel of H^4(G) -> H^4(G1) + H^4(G2). Throws kNotSubgroup and
// kNotExactFactorization.
PointedClassification classify_pointed(const FiniteGroup& g, const Subgroup& g1,
                                       const Subgroup& g2,
                                       const CohomologyOptions& options = {});

// Kernel of x -> R x in (+) Z/t_l on (+) Z/s_k, as invariant factors and
// generators (coordinates mod s).
struct FiniteKernel {
  std::vector<Integer> invariant_factors;
  std::vector<std::vector<Integer>> generators;
};
FiniteKernel finite_kernel(const std::vector<Integer>& source_factors,
                           const std::vector<Integer>& target_factors,
                           const std::vector<std::vector<Integer>>& matrix);

}  // namespace tenfact
