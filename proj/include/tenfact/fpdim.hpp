#pragma once

// Frobenius-Perron character of Gr(A), FPdim of objects and of the
// category, and the regular element R_A = sum FPdim(X) P(X).

#include "tenfact/category.hpp"

#include <cstddef>
#include <vector>

namespace tenfact {

struct FpProfile {
  std::vector<double> dims;
  double cat_dim = 0.0;
  K0Vector regular;
  double tolerance = 0.0;
  std::size_t iterations = 0;
  // True when dims were confirmed to be an exact integer character.
  bool integer_confirmed = false;
  // max |d_X d_Y - sum_Z N^Z_{X,Y} d_Z| / (1 + d_X d_Y)
  double character_residual = 0.0;
};

inline constexpr double kDefaultFpTolerance = 1e-12;
inline constexpr std::size_t kMaxPowerIterations = 100000;
inline constexpr double kIntegralityTolerance = 1e-6;

FpProfile fp_character(const CategoryData& data,
                       double tol = kDefaultFpTolerance);

double fpdim_object(const FpProfile& profile, const GrVector& v);

// FPdim(P(x)) = sum_y C[x][y] dims[y].
double fpdim_projective(const CategoryData& data, const FpProfile& profile,
                        Index x);

struct EigenCheck {
  double max_deviation = 0.0;
  Index worst_simple = 0;
};

// Checks X R_A = R_A X = FPdim(X) R_A in Gr(A) (x) R for every simple X.
EigenCheck eigen_equation_check(const CategoryData& data,
                                const FpProfile& profile);

struct Predicates {
  bool pointed = false;
  bool integral = false;
  bool weakly_integral = false;
  bool fusion = false;

  friend bool operator==(const Predicates&, const Predicates&) = default;
};

Predicates predicates(const CategoryData& data, const FpProfile& profile);

bool is_invertible(const FusionRing& ring, const CategoryData& data, Index x);

}  // namespace tenfact
