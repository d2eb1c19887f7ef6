#include "tenfact/fpdim.hpp"

#include "tenfact/error.hpp"
#include "tenfact/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tenfact {

namespace {

// max over X,Y of the character residual, relative to 1 + d_X d_Y.
double character_residual(const FusionRing& ring,
                          const std::vector<double>& dims) {
  const std::size_t n = ring.rank();
  double worst = 0.0;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      double sum = 0.0;
      for (const auto& t : ring.product(x, y)) {
        sum += static_cast<double>(t.mult) * dims[t.simple];
      }
      const double prod = dims[x] * dims[y];
      worst = std::max(worst, std::abs(prod - sum) / (1.0 + prod));
    }
  }
  return worst;
}

bool is_integer_character(const FusionRing& ring,
                          const std::vector<std::int64_t>& dims) {
  const std::size_t n = ring.rank();
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      std::int64_t sum = 0;
      for (const auto& t : ring.product(x, y)) sum += t.mult * dims[t.simple];
      if (sum != dims[x] * dims[y]) return false;
    }
  }
  return true;
}

double category_dimension(const CategoryData& data,
                          const std::vector<double>& dims) {
  const std::size_t n = data.rank();
  double total = 0.0;
  for (Index x = 0; x < n; ++x) {
    double proj = 0.0;
    for (Index y = 0; y < n; ++y) {
      proj += static_cast<double>(data.cartan[x][y]) * dims[y];
    }
    total += dims[x] * proj;
  }
  return total;
}

}  // namespace

FpProfile fp_character(const CategoryData& data, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::kInvalidData, "tolerance must be positive");
  const FusionRing ring(data);
  const std::size_t n = ring.rank();

  // FPdim is a left eigenvector of every N_X, hence of M = sum_X N_X.
  // Iterate with A = M^T: A[y][z] = sum_x N^z_{x,y}.
  std::vector<double> a(n * n, 0.0);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (const auto& t : ring.product(x, y)) {
        a[y * n + t.simple] += static_cast<double>(t.mult);
      }
    }
  }

  std::vector<double> v(n, 1.0);
  std::vector<double> next(n, 0.0);
  std::size_t iter = 0;
  bool converged = false;
  while (iter < kMaxPowerIterations) {
    ++iter;
    simd::gemv_f64(a, n, n, v, next);
    double norm = 0.0;
    for (double e : next) norm = std::max(norm, std::abs(e));
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    double diff = 0.0;
    for (Index i = 0; i < n; ++i) {
      next[i] /= norm;
      diff = std::max(diff, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    if (diff <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    fail(ErrorCode::kNoConvergence,
         "power iteration did not converge in " + std::to_string(iter) +
             " iterations");
  }
  const double unit_entry = v[data.unit];
  if (!(unit_entry > tol)) {
    fail(ErrorCode::kNonpositive, "Perron vector vanishes at the unit");
  }
  for (double& e : v) e /= unit_entry;
  for (Index i = 0; i < n; ++i) {
    if (!(v[i] > tol)) {
      fail(ErrorCode::kNonpositive,
           "nonpositive FPdim for simple " + std::to_string(i));
    }
  }

  FpProfile profile;
  profile.tolerance = tol;
  profile.iterations = iter;

  std::vector<std::int64_t> rounded(n);
  bool near_integers = true;
  for (Index i = 0; i < n; ++i) {
    const double r = std::round(v[i]);
    rounded[i] = static_cast<std::int64_t>(r);
    if (std::abs(r - v[i]) > kIntegralityTolerance) near_integers = false;
  }
  if (near_integers && is_integer_character(ring, rounded)) {
    for (Index i = 0; i < n; ++i) v[i] = static_cast<double>(rounded[i]);
    profile.integer_confirmed = true;
  }

  profile.character_residual = character_residual(ring, v);
  const double allowed = std::max(1e3 * tol, 1e-9);
  if (profile.character_residual > allowed) {
    fail(ErrorCode::kNoConvergence,
         "Perron vector is not a character of Gr(A) (residual " +
             std::to_string(profile.character_residual) + ")");
  }

  profile.dims = v;
  profile.regular.mults = v;
  profile.cat_dim = category_dimension(data, v);
  return profile;
}

double fpdim_object(const FpProfile& profile, const GrVector& v) {
  if (v.coeffs.size() != profile.dims.size()) {
    fail(ErrorCode::kDimensionMismatch, "fpdim_object: length mismatch");
  }
  double total = 0.0;
  for (Index i = 0; i < v.coeffs.size(); ++i) {
    total += static_cast<double>(v.coeffs[i]) * profile.dims[i];
  }
  return total;
}

double fpdim_projective(const CategoryData& data, const FpProfile& profile,
                        Index x) {
  return fpdim_object(profile, projective_class(data, x));
}

EigenCheck eigen_equation_check(const CategoryData& data,
                                const FpProfile& profile) {
  const FusionRing ring(data);
  const std::size_t n = ring.rank();
  const std::vector<double> r = gr_image(data, profile.regular);
  double scale = 0.0;
  for (double e : r) scale = std::max(scale, std::abs(e));
  EigenCheck out;
  for (Index x = 0; x < n; ++x) {
    std::vector<double> left(n, 0.0), right(n, 0.0);
    for (Index y = 0; y < n; ++y) {
      if (r[y] == 0.0) continue;
      for (const auto& t : ring.product(x, y)) {
        left[t.simple] += r[y] * static_cast<double>(t.mult);
      }
      for (const auto& t : ring.product(y, x)) {
        right[t.simple] += r[y] * static_cast<double>(t.mult);
      }
    }
    for (Index z = 0; z < n; ++z) {
      const double expected = profile.dims[x] * r[z];
      const double dev = std::max(std::abs(left[z] - expected),
                                  std::abs(right[z] - expected)) /
                         std::max(1.0, scale * profile.dims[x]);
      if (dev > out.max_deviation) {
        out.max_deviation = dev;
        out.worst_simple = x;
      }
    }
  }
  return out;
}

bool is_invertible(const FusionRing& ring, const CategoryData& data, Index x) {
  const auto& terms = ring.product(x, data.dual[x]);
  return terms.size() == 1 && terms[0].simple == data.unit &&
         terms[0].mult == 1;
}

Predicates predicates(const CategoryData& data, const FpProfile& profile) {
  const FusionRing ring(data);
  Predicates p;
  p.pointed = true;
  for (Index x = 0; x < data.rank(); ++x) {
    if (!is_invertible(ring, data, x)) {
      p.pointed = false;
      break;
    }
  }
  p.integral = profile.integer_confirmed;
  p.weakly_integral = std::abs(profile.cat_dim - std::round(profile.cat_dim)) <=
                      kIntegralityTolerance;
  p.fusion = cartan_is_identity(data);
  return p;
}

}  // namespace tenfact
