#include "tenfact/category.hpp"

#include "tenfact/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace tenfact {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "INDEX_OUT_OF_RANGE";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::kMalformedInput: return "MALFORMED_INPUT";
    case ErrorCode::kInvalidData: return "INVALID_DATA";
    case ErrorCode::kAmbiguous: return "AMBIGUOUS";
    case ErrorCode::kInconsistent: return "INCONSISTENT";
    case ErrorCode::kNoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::kNonpositive: return "NONPOSITIVE";
    case ErrorCode::kTargetMismatch: return "TARGET_MISMATCH";
    case ErrorCode::kInvalidEmbedding: return "INVALID_EMBEDDING";
    case ErrorCode::kUnsupported: return "UNSUPPORTED";
    case ErrorCode::kAutoUnsupported: return "AUTO_UNSUPPORTED";
    case ErrorCode::kOrderLimit: return "ORDER_LIMIT";
    case ErrorCode::kSizeLimit: return "SIZE_LIMIT";
    case ErrorCode::kResourceLimit: return "RESOURCE_LIMIT";
    case ErrorCode::kNotCocycle: return "NOT_COCYCLE";
    case ErrorCode::kNotSubgroup: return "NOT_SUBGROUP";
    case ErrorCode::kNotExactFactorization: return "NOT_EXACT_FACTORIZATION";
    case ErrorCode::kNotIntegral: return "NOT_INTEGRAL";
  }
  return "UNKNOWN";
}

GrVector basis_vector(std::size_t n, Index i) {
  GrVector v{std::vector<std::int64_t>(n, 0)};
  if (i >= n) fail(ErrorCode::kIndexOutOfRange, "basis index out of range");
  v.coeffs[i] = 1;
  return v;
}

namespace {

bool is_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (Index i : p) {
    if (i >= n || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

void check_index(Index i, std::size_t n, const char* what) {
  if (i >= n) {
    fail(ErrorCode::kIndexOutOfRange,
         std::string(what) + " index " + std::to_string(i) +
             " out of range (rank " + std::to_string(n) + ")");
  }
}

void check_length(std::size_t got, std::size_t n, const char* what) {
  if (got != n) {
    fail(ErrorCode::kDimensionMismatch,
         std::string(what) + ": length " + std::to_string(got) +
             " != rank " + std::to_string(n));
  }
}

}  // namespace

void check_well_formed(const CategoryData& data) {
  const std::size_t n = data.rank();
  if (n == 0) fail(ErrorCode::kMalformedInput, "category has no simples");
  if (data.unit >= n) fail(ErrorCode::kMalformedInput, "unit out of range");
  if (!is_permutation(data.dual, n)) {
    fail(ErrorCode::kMalformedInput, "dual is not a permutation of simples");
  }
  if (data.dual_d && !is_permutation(*data.dual_d, n)) {
    fail(ErrorCode::kMalformedInput, "dualD is not a permutation of simples");
  }
  if (data.cartan.size() != n) {
    fail(ErrorCode::kMalformedInput, "cartan must have one row per simple");
  }
  for (const auto& row : data.cartan) {
    if (row.size() != n) {
      fail(ErrorCode::kMalformedInput, "cartan must be square");
    }
  }
  for (const FusionEntry& e : data.fusion) {
    if (e.product >= n || e.left >= n || e.right >= n) {
      fail(ErrorCode::kMalformedInput, "fusion entry index out of range");
    }
    if (e.mult < 0) {
      fail(ErrorCode::kMalformedInput, "negative fusion multiplicity");
    }
  }
}

void canonicalize(CategoryData& data) {
  auto key = [](const FusionEntry& e) {
    return std::tuple(e.left, e.right, e.product);
  };
  std::sort(data.fusion.begin(), data.fusion.end(),
            [&](const FusionEntry& a, const FusionEntry& b) {
              return key(a) < key(b);
            });
  std::vector<FusionEntry> merged;
  for (const FusionEntry& e : data.fusion) {
    if (!merged.empty() && key(merged.back()) == key(e)) {
      merged.back().mult += e.mult;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const FusionEntry& e) { return e.mult == 0; });
  data.fusion = std::move(merged);
}

Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (Index i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

Index left_dual(const CategoryData& data, Index x) {
  for (Index i = 0; i < data.dual.size(); ++i) {
    if (data.dual[i] == x) return i;
  }
  fail(ErrorCode::kMalformedInput, "dual is not a permutation");
}

FusionRing::FusionRing(const CategoryData& data)
    : n_(data.rank()), unit_(data.unit), products_(n_ * n_) {
  check_well_formed(data);
  for (const FusionEntry& e : data.fusion) {
    if (e.mult == 0) continue;
    products_[e.left * n_ + e.right].push_back({e.product, e.mult});
  }
  for (auto& terms : products_) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.simple < b.simple; });
    std::vector<Term> merged;
    for (const Term& t : terms) {
      if (!merged.empty() && merged.back().simple == t.simple) {
        merged.back().mult += t.mult;
      } else {
        merged.push_back(t);
      }
    }
    terms = std::move(merged);
  }
}

std::int64_t FusionRing::multiplicity(Index z, Index x, Index y) const {
  for (const Term& t : product(x, y)) {
    if (t.simple == z) return t.mult;
  }
  return 0;
}

GrVector FusionRing::multiply(const GrVector& v, const GrVector& w) const {
  check_length(v.coeffs.size(), n_, "gr_product lhs");
  check_length(w.coeffs.size(), n_, "gr_product rhs");
  GrVector out{std::vector<std::int64_t>(n_, 0)};
  for (Index x = 0; x < n_; ++x) {
    if (v.coeffs[x] == 0) continue;
    for (Index y = 0; y < n_; ++y) {
      if (w.coeffs[y] == 0) continue;
      const std::int64_t c = v.coeffs[x] * w.coeffs[y];
      for (const Term& t : product(x, y)) out.coeffs[t.simple] += c * t.mult;
    }
  }
  return out;
}

std::vector<double> FusionRing::multiply(const std::vector<double>& v,
                                         const std::vector<double>& w) const {
  check_length(v.size(), n_, "gr_product lhs");
  check_length(w.size(), n_, "gr_product rhs");
  std::vector<double> out(n_, 0.0);
  for (Index x = 0; x < n_; ++x) {
    if (v[x] == 0.0) continue;
    for (Index y = 0; y < n_; ++y) {
      if (w[y] == 0.0) continue;
      const double c = v[x] * w[y];
      for (const Term& t : product(x, y)) {
        out[t.simple] += c * static_cast<double>(t.mult);
      }
    }
  }
  return out;
}

namespace {

class ReportBuilder {
 public:
  void add(const std::string& kind, std::vector<Index> witness,
           std::string detail) {
    std::size_t& count = report_.counts[kind];
    ++count;
    if (count <= ValidationReport::kMaxWitnessesPerKind) {
      report_.violations.push_back(
          {kind, std::move(witness), std::move(detail)});
    }
  }

  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

std::string fmt_vec(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

void check_unit_laws(const CategoryData& data, const FusionRing& ring,
                     ReportBuilder& out) {
  const std::size_t n = data.rank();
  for (Index y = 0; y < n; ++y) {
    for (int side = 0; side < 2; ++side) {
      const auto& terms =
          side == 0 ? ring.product(data.unit, y) : ring.product(y, data.unit);
      bool good = terms.size() == 1 && terms[0].simple == y &&
                  terms[0].mult == 1;
      if (!good) {
        out.add("unit-law", {y},
                side == 0 ? "1 (x) Y != Y" : "Y (x) 1 != Y");
      }
    }
  }
}

void check_associativity(const FusionRing& ring, ReportBuilder& out) {
  const std::size_t n = ring.rank();
  std::vector<std::int64_t> lhs(n, 0), rhs(n, 0);
  std::vector<Index> touched;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const auto& xy = ring.product(x, y);
      for (Index v = 0; v < n; ++v) {
        touched.clear();
        for (const auto& w : xy) {
          for (const auto& z : ring.product(w.simple, v)) {
            lhs[z.simple] += w.mult * z.mult;
            touched.push_back(z.simple);
          }
        }
        for (const auto& w : ring.product(y, v)) {
          for (const auto& z : ring.product(x, w.simple)) {
            rhs[z.simple] += w.mult * z.mult;
            touched.push_back(z.simple);
          }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()),
                      touched.end());
        for (Index z : touched) {
          if (lhs[z] != rhs[z]) {
            out.add("associativity", {x, y, v, z},
                    "[(XY)V : Z] = " + std::to_string(lhs[z]) +
                        " but [X(YV) : Z] = " + std::to_string(rhs[z]));
          }
          lhs[z] = 0;
          rhs[z] = 0;
        }
      }
    }
  }
}

void check_duality(const CategoryData& data, const FusionRing& ring,
                   ReportBuilder& out) {
  const std::size_t n = data.rank();
  const Index one = data.unit;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const std::int64_t expected = (y == data.dual[x]) ? 1 : 0;
      const std::int64_t got = ring.multiplicity(one, x, y);
      if (got != expected) {
        out.add("duality-symmetry", {x, y},
                "N^1_{X,Y} = " + std::to_string(got) + ", expected " +
                    std::to_string(expected));
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      const Index xs = data.dual[x];
      const Index ys = data.dual[y];
      for (const auto& t : ring.product(x, y)) {
        const std::int64_t mirrored =
            ring.multiplicity(data.dual[t.simple], ys, xs);
        if (mirrored != t.mult) {
          out.add("duality-symmetry", {t.simple, x, y},
                  "N^Z_{X,Y} = " + std::to_string(t.mult) +
                      " but N^{Z*}_{Y*,X*} = " + std::to_string(mirrored));
        }
      }
    }
  }
  // Mirror pairs where only the mirrored side is nonzero.
  const Permutation ldual = inverse_permutation(data.dual);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (const auto& t : ring.product(x, y)) {
        const Index z0 = ldual[t.simple];
        const Index x0 = ldual[y];
        const Index y0 = ldual[x];
        if (ring.multiplicity(z0, x0, y0) == 0) {
          out.add("duality-symmetry", {z0, x0, y0},
                  "N^Z_{X,Y} = 0 but N^{Z*}_{Y*,X*} = " +
                      std::to_string(t.mult));
        }
      }
    }
  }
}

void check_cartan(const CategoryData& data, ReportBuilder& out) {
  const std::size_t n = data.rank();
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (data.cartan[x][y] < 0) {
        out.add("cartan-diagonal", {x, y}, "negative Cartan entry");
      }
    }
    if (data.cartan[x][x] < 1) {
      out.add("cartan-diagonal", {x, x}, "P(X) does not cover X");
    }
  }
}

void check_projdec(const CategoryData& data, const FusionRing& ring,
                   ReportBuilder& out) {
  const std::size_t n = data.rank();
  const Permutation ldual = inverse_permutation(data.dual);
  std::vector<std::int64_t> lhs(n), rhs(n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      std::fill(lhs.begin(), lhs.end(), 0);
      std::fill(rhs.begin(), rhs.end(), 0);
      // [Y (x) P(X)] = sum_W C[X][W] [Y (x) W]
      for (Index w = 0; w < n; ++w) {
        const std::int64_t c = data.cartan[x][w];
        if (c == 0) continue;
        for (const auto& t : ring.product(y, w)) lhs[t.simple] += c * t.mult;
      }
      // sum_Z N^X_{*Y,Z} [P(Z)]
      const Index ly = ldual[y];
      for (Index z = 0; z < n; ++z) {
        const std::int64_t m = ring.multiplicity(x, ly, z);
        if (m == 0) continue;
        for (Index w = 0; w < n; ++w) rhs[w] += m * data.cartan[z][w];
      }
      if (lhs != rhs) {
        out.add("projdec", {x, y},
                "[Y(x)P(X)] = " + fmt_vec(lhs) + " but sum N^X_{*Y,Z}[P(Z)] = " +
                    fmt_vec(rhs));
      }
    }
  }
}

void check_dual_d(const CategoryData& data, ReportBuilder& out) {
  if (!data.dual_d) return;
  const std::size_t n = data.rank();
  for (Index y = 0; y < n; ++y) {
    const GrVector dual_row = dual_class(data, projective_class(data, y));
    const Index z = (*data.dual_d)[y];
    if (dual_row.coeffs != data.cartan[z]) {
      out.add("dualD", {y, z}, "[P(Y)*] != [P(Y^D)]");
    }
  }
}

}  // namespace

ValidationReport validate(const CategoryData& data) {
  check_well_formed(data);
  const FusionRing ring(data);
  ReportBuilder out;
  check_unit_laws(data, ring, out);
  check_associativity(ring, out);
  check_duality(data, ring, out);
  check_cartan(data, out);
  check_projdec(data, ring, out);
  check_dual_d(data, out);
  return out.take();
}

IntMatrix fusion_matrix(const CategoryData& data, Index x) {
  check_well_formed(data);
  const std::size_t n = data.rank();
  check_index(x, n, "fusion_matrix");
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (const FusionEntry& e : data.fusion) {
    if (e.left == x) m[e.product][e.right] += e.mult;
  }
  return m;
}

GrVector gr_product(const CategoryData& data, const GrVector& v,
                    const GrVector& w) {
  return FusionRing(data).multiply(v, w);
}

GrVector projective_class(const CategoryData& data, Index x) {
  check_index(x, data.rank(), "projective_class");
  return GrVector{data.cartan[x]};
}

std::vector<double> gr_image(const CategoryData& data, const K0Vector& p) {
  const std::size_t n = data.rank();
  check_length(p.mults.size(), n, "gr_image");
  std::vector<double> out(n, 0.0);
  for (Index x = 0; x < n; ++x) {
    if (p.mults[x] == 0.0) continue;
    for (Index y = 0; y < n; ++y) {
      out[y] += p.mults[x] * static_cast<double>(data.cartan[x][y]);
    }
  }
  return out;
}

GrVector dual_class(const CategoryData& data, const GrVector& v) {
  const std::size_t n = data.rank();
  check_length(v.coeffs.size(), n, "dual_class");
  GrVector out{std::vector<std::int64_t>(n, 0)};
  for (Index x = 0; x < n; ++x) out.coeffs[data.dual[x]] += v.coeffs[x];
  return out;
}

Index dual_d(const CategoryData& data, Index y) {
  check_well_formed(data);
  const std::size_t n = data.rank();
  check_index(y, n, "dual_D");
  const GrVector target = dual_class(data, projective_class(data, y));
  std::vector<Index> matches;
  for (Index z = 0; z < n; ++z) {
    if (data.cartan[z] == target.coeffs) matches.push_back(z);
  }
  if (data.dual_d) {
    const Index supplied = (*data.dual_d)[y];
    if (std::find(matches.begin(), matches.end(), supplied) == matches.end()) {
      fail(ErrorCode::kInconsistent,
           "supplied dualD[" + std::to_string(y) +
               "] does not satisfy [P(Y)*] = [P(Y^D)]");
    }
    return supplied;
  }
  if (matches.size() == 1) return matches.front();
  if (matches.empty()) {
    fail(ErrorCode::kInconsistent,
         "no simple Z has [P(Z)] = [P(Y)*] for Y = " + std::to_string(y));
  }
  fail(ErrorCode::kAmbiguous,
       std::to_string(matches.size()) + " candidates for Y^D with Y = " +
           std::to_string(y) + "; supply dualD");
}

K0Vector ProjectiveDecomposition::to_k0() const {
  K0Vector out;
  out.mults.reserve(mults.size());
  for (const Rational& m : mults) out.mults.push_back(m.convert_to<double>());
  return out;
}

std::string_view status_name(ProjectiveDecomposition::Status status) {
  switch (status) {
    case ProjectiveDecomposition::Status::kOk: return "OK";
    case ProjectiveDecomposition::Status::kSingular: return "SINGULAR";
    case ProjectiveDecomposition::Status::kNotProjectiveClass:
      return "NOT_PROJECTIVE_CLASS";
  }
  return "UNKNOWN";
}

ProjectiveDecomposition decompose_projective(const CategoryData& data,
                                             const GrVector& v) {
  check_well_formed(data);
  const std::size_t n = data.rank();
  check_length(v.coeffs.size(), n, "decompose_projective");

  // Solve Cartan^T m = v by exact Gauss-Jordan elimination.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a[i][j] = data.cartan[j][i];
    a[i][n] = v.coeffs[i];
  }
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return {ProjectiveDecomposition::Status::kSingular, {}};
    std::swap(a[pivot], a[col]);
    const Rational inv = 1 / a[col][col];
    for (Index j = col; j <= n; ++j) a[col][j] *= inv;
    for (Index i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (Index j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  ProjectiveDecomposition out;
  out.mults.resize(n);
  for (Index i = 0; i < n; ++i) {
    out.mults[i] = a[i][n];
    if (out.mults[i] < 0 ||
        boost::multiprecision::denominator(out.mults[i]) != 1) {
      out.status = ProjectiveDecomposition::Status::kNotProjectiveClass;
    }
  }
  return out;
}

std::int64_t hom_from_projective(const CategoryData& data, const K0Vector& p,
                                 const GrVector& m) {
  const std::size_t n = data.rank();
  check_length(p.mults.size(), n, "hom_from_projective source");
  check_length(m.coeffs.size(), n, "hom_from_projective target");
  std::int64_t total = 0;
  for (Index x = 0; x < n; ++x) {
    const double r = std::round(p.mults[x]);
    if (std::abs(r - p.mults[x]) > 1e-9) {
      fail(ErrorCode::kNotIntegral, "projective multiplicities must be integers");
    }
    total += static_cast<std::int64_t>(r) * m.coeffs[x];
  }
  return total;
}

bool cartan_is_identity(const CategoryData& data) {
  const std::size_t n = data.rank();
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      if (data.cartan[x][y] != (x == y ? 1 : 0)) return false;
    }
  }
  return true;
}

}  // namespace tenfact
