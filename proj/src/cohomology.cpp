#include "tenfact/cohomology.hpp"

#include "tenfact/error.hpp"
#include "tenfact/simd/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tenfact {

CellIndex::CellIndex(const FiniteGroup& g, std::size_t degree, bool normalized)
    : degree_(degree), digit_of_(g.order(), npos) {
  for (Index a = 0; a < g.order(); ++a) {
    if (normalized && a == g.identity()) continue;
    digit_of_[a] = digits_.size();
    digits_.push_back(a);
  }
  base_ = digits_.size();
  size_ = 1;
  for (std::size_t i = 0; i < degree; ++i) size_ *= base_;
}

std::size_t CellIndex::encode(const std::vector<Index>& tuple) const {
  std::size_t cell = 0;
  for (Index a : tuple) {
    const std::size_t d = digit_of_[a];
    if (d == npos) return npos;
    cell = cell * base_ + d;
  }
  return cell;
}

std::vector<Index> CellIndex::decode(std::size_t cell) const {
  std::vector<Index> tuple(degree_);
  for (std::size_t i = degree_; i-- > 0;) {
    tuple[i] = digits_[cell % base_];
    cell /= base_;
  }
  return tuple;
}

bool IntCochain::is_zero() const {
  return std::all_of(values.begin(), values.end(),
                     [](const Integer& v) { return v == 0; });
}

namespace {

// Calls fn(source_cell, sign) for each term of (dc)(tuple), tuple of length
// n + 1; terms on degenerate normalized cells are skipped.
template <typename Fn>
void for_each_term(const FiniteGroup& g, const CellIndex& in,
                   const std::vector<Index>& tuple, std::vector<Index>& scratch,
                   Fn&& fn) {
  const std::size_t n = in.degree();
  auto emit = [&](int sign) {
    const std::size_t cell = in.encode(scratch);
    if (cell != CellIndex::npos) fn(cell, sign);
  };
  scratch.assign(tuple.begin() + 1, tuple.end());
  emit(1);
  for (std::size_t i = 1; i <= n; ++i) {
    scratch.clear();
    for (std::size_t j = 0; j + 1 < i; ++j) scratch.push_back(tuple[j]);
    scratch.push_back(g.mul(tuple[i - 1], tuple[i]));
    for (std::size_t j = i + 1; j <= n; ++j) scratch.push_back(tuple[j]);
    emit(i % 2 == 0 ? 1 : -1);
  }
  scratch.assign(tuple.begin(), tuple.end() - 1);
  emit((n + 1) % 2 == 0 ? 1 : -1);
}

template <typename T>
std::vector<T> apply_differential(const FiniteGroup& g, std::size_t degree,
                                  const std::vector<T>& values) {
  const CellIndex in(g, degree);
  const CellIndex out(g, degree + 1);
  if (values.size() != in.size()) {
    fail(ErrorCode::kDimensionMismatch, "cochain has " + std::to_string(values.size()) +
                                            " values, expected " + std::to_string(in.size()));
  }
  std::vector<T> result(out.size());
  std::vector<Index> scratch;
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const std::vector<Index> tuple = out.decode(cell);
    T acc = 0;
    for_each_term(g, in, tuple, scratch, [&](std::size_t src, int sign) {
      if (sign > 0) {
        acc += values[src];
      } else {
        acc -= values[src];
      }
    });
    result[cell] = std::move(acc);
  }
  return result;
}

void internal_check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal consistency check failed: " + what);
}

}  // namespace

IntCochain zero_cochain(const FiniteGroup& g, std::size_t degree) {
  return {degree, std::vector<Integer>(CellIndex(g, degree).size())};
}

Integer cochain_value(const FiniteGroup& g, const IntCochain& c,
                      const std::vector<Index>& tuple) {
  const std::size_t cell = CellIndex(g, c.degree).encode(tuple);
  return cell == CellIndex::npos ? Integer(0) : c.values.at(cell);
}

Rational cochain_value(const FiniteGroup& g, const QZCochain& c,
                       const std::vector<Index>& tuple) {
  const std::size_t cell = CellIndex(g, c.degree).encode(tuple);
  return cell == CellIndex::npos ? Rational(0) : c.values.at(cell);
}

IntCochain bar_differential(const FiniteGroup& g, const IntCochain& c) {
  return {c.degree + 1, apply_differential(g, c.degree, c.values)};
}

std::vector<Rational> bar_differential(const FiniteGroup& g, std::size_t degree,
                                       const std::vector<Rational>& values) {
  return apply_differential(g, degree, values);
}

SparseIntMatrix differential_matrix(const FiniteGroup& g, std::size_t degree,
                                    bool normalized) {
  const CellIndex in(g, degree, normalized);
  const CellIndex out(g, degree + 1, normalized);
  SparseIntMatrix m(out.size(), in.size());
  std::vector<Index> scratch;
  for (std::size_t cell = 0; cell < out.size(); ++cell) {
    const std::vector<Index> tuple = out.decode(cell);
    for_each_term(g, in, tuple, scratch, [&](std::size_t src, int sign) {
      m.row_entries[cell].emplace_back(src, Integer(sign));
    });
  }
  m.normalize();
  return m;
}

bool is_cocycle(const FiniteGroup& g, const IntCochain& c) {
  return bar_differential(g, c).is_zero();
}

bool is_qz_cocycle(const FiniteGroup& g, const QZCochain& omega) {
  using boost::multiprecision::denominator;
  const auto d = bar_differential(g, omega.degree, omega.values);
  return std::all_of(d.begin(), d.end(),
                     [](const Rational& v) { return denominator(v) == 1; });
}

IntCochain connecting_map(const FiniteGroup& g, const QZCochain& omega) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const auto d = bar_differential(g, omega.degree, omega.values);
  IntCochain z{omega.degree + 1, {}};
  z.values.reserve(d.size());
  for (const Rational& v : d) {
    if (denominator(v) != 1) fail(ErrorCode::kNotCocycle, "omega is not a Q/Z cocycle");
    z.values.push_back(numerator(v));
  }
  return z;
}

std::size_t rank_mod_m31(const SparseIntMatrix& a) {
  using simd::kMersenne31;
  const std::size_t rows = a.rows;
  const std::size_t cols = a.cols;
  std::vector<std::uint32_t> m(rows * cols, 0);
  const Integer p(kMersenne31);
  for (std::size_t r = 0; r < rows; ++r)
    for (const auto& [c, v] : a.row_entries[r])
      m[r * cols + c] = static_cast<std::uint32_t>(mod_floor(v, p));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(m.begin() + pivot * cols, m.begin() + (pivot + 1) * cols,
                       m.begin() + rank * cols);
    }
    std::uint32_t* prow = m.data() + rank * cols;
    const std::uint32_t inv = simd::inverse_m31(prow[c]);
    for (std::size_t j = c; j < cols; ++j) prow[j] = simd::mul_m31(prow[j], inv);
    const std::span<const std::uint32_t> src(prow + c, cols - c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint32_t* row = m.data() + r * cols;
      if (row[c] == 0) continue;
      simd::axpy_mod_m31(kMersenne31 - row[c], src, std::span(row + c, cols - c));
    }
    ++rank;
  }
  return rank;
}

Integer CohomologyGroup::order() const {
  Integer n = 1;
  for (const Integer& d : invariant_factors) n *= d;
  return n;
}

std::vector<Integer> CohomologyGroup::coordinates(const IntCochain& z) const {
  if (z.degree != 4 || z.values.size() != smith->rows()) {
    fail(ErrorCode::kDimensionMismatch, "expected a degree 4 cochain on this group");
  }
  if (!is_cocycle(group, z)) fail(ErrorCode::kNotCocycle, "dz != 0");
  std::vector<Integer> t = z.values;
  smith->apply_U(t);
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (smith->pivot_of_row(r) == SmithForm::npos && t[r] != 0) {
      fail(ErrorCode::kNotCocycle, "class has a free component");
    }
  }
  std::vector<Integer> coords;
  for (const auto& p : smith->pivots())
    if (p.value > 1) coords.push_back(mod_floor(t[p.row], p.value));
  return coords;
}

bool CohomologyGroup::is_trivial(const IntCochain& z, IntCochain* witness) const {
  const auto coords = coordinates(z);
  if (std::any_of(coords.begin(), coords.end(), [](const Integer& v) { return v != 0; })) {
    return false;
  }
  std::vector<Integer> y;
  internal_check(smith->solve_integral(z.values, y), "trivial class has no witness");
  IntCochain w{3, std::move(y)};
  internal_check(bar_differential(group, w) == z, "coboundary witness");
  if (witness != nullptr) *witness = std::move(w);
  return true;
}

IntCochain CohomologyGroup::combination(const std::vector<Integer>& coeffs) const {
  if (coeffs.size() != generators.size()) {
    fail(ErrorCode::kDimensionMismatch, "one coefficient per generator expected");
  }
  IntCochain z = zero_cochain(group, 4);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t i = 0; i < z.values.size(); ++i)
      z.values[i] += coeffs[k] * generators[k].values[i];
  }
  return z;
}

CohomologyGroup h4_integral(const FiniteGroup& g, const CohomologyOptions& options) {
  if (g.order() > options.order_limit) {
    fail(ErrorCode::kSizeLimit, "group order " + std::to_string(g.order()) +
                                    " exceeds the cohomology limit " +
                                    std::to_string(options.order_limit));
  }
  CohomologyGroup h;
  h.group = g;
  const SparseIntMatrix d3 = differential_matrix(g, 3);
  h.smith = std::make_shared<const SmithForm>(SmithForm::compute(d3, options.smith));
  h.rank_d3 = h.smith->rank();
  for (const auto& p : h.smith->pivots()) {
    if (p.value == 1) continue;
    std::vector<Integer> z(d3.rows);
    z[p.row] = 1;
    h.smith->apply_U_inverse(z);
    std::vector<Integer> w(d3.cols);
    w[p.col] = 1;
    h.smith->apply_V(w);
    IntCochain gen{4, std::move(z)};
    internal_check(is_cocycle(g, gen), "generator is a cocycle");
    const auto dw = d3.multiply(w);
    for (std::size_t i = 0; i < dw.size(); ++i)
      internal_check(dw[i] == p.value * gen.values[i], "torsion witness");
    h.invariant_factors.push_back(p.value);
    h.generators.push_back(std::move(gen));
    h.witnesses.push_back({3, std::move(w)});
  }
  const CellIndex c4(g, 4);
  const CellIndex c5(g, 5);
  if (options.d4_check_max_entries != 0 &&
      c4.size() * c5.size() <= options.d4_check_max_entries) {
    h.rank_d4 = rank_mod_m31(differential_matrix(g, 4));
    internal_check(h.rank_d3 + *h.rank_d4 == c4.size(), "rank d3 + rank d4 = |C^4|");
  }
  return h;
}

std::vector<Integer> h4_invariant_factors_unnormalized(const FiniteGroup& g,
                                                       const SmithOptions& options) {
  return SmithForm::compute(differential_matrix(g, 3, false), options).torsion();
}

QZCochain omega_from_z(const CohomologyGroup& h, const IntCochain& z) {
  if (z.degree != 4 || z.values.size() != h.smith->rows()) {
    fail(ErrorCode::kDimensionMismatch, "expected a degree 4 cochain on this group");
  }
  if (!is_cocycle(h.group, z)) fail(ErrorCode::kNotCocycle, "dz != 0");
  std::vector<Rational> b(z.values.begin(), z.values.end());
  std::vector<Rational> c;
  if (!h.smith->solve_rational(b, c)) fail(ErrorCode::kNotCocycle, "z is not rationally exact");
  QZCochain omega;
  omega.values.reserve(c.size());
  for (const Rational& v : c) omega.values.push_back(mod_one(v));
  return omega;
}

QZCochain omega_from_z(const FiniteGroup& g, const IntCochain& z,
                       const CohomologyOptions& options) {
  CohomologyOptions quick = options;
  quick.d4_check_max_entries = 0;
  return omega_from_z(h4_integral(g, quick), z);
}

IntCochain restrict_cochain(const FiniteGroup& g, const IntCochain& z,
                            const Subgroup& h) {
  if (!is_subgroup(g, h.elements)) fail(ErrorCode::kNotSubgroup, "not a subgroup");
  std::vector<Index> emb;
  const FiniteGroup sub = subgroup_as_group(g, h, &emb);
  const CellIndex on_g(g, z.degree);
  const CellIndex on_h(sub, z.degree);
  if (z.values.size() != on_g.size()) {
    fail(ErrorCode::kDimensionMismatch, "cochain does not match the group");
  }
  IntCochain out{z.degree, std::vector<Integer>(on_h.size())};
  std::vector<Index> tuple;
  for (std::size_t cell = 0; cell < on_h.size(); ++cell) {
    tuple = on_h.decode(cell);
    for (Index& a : tuple) a = emb[a];
    out.values[cell] = z.values[on_g.encode(tuple)];
  }
  return out;
}

bool is_trivial_class(const FiniteGroup& g, const IntCochain& z, IntCochain* witness,
                      const CohomologyOptions& options) {
  CohomologyOptions quick = options;
  quick.d4_check_max_entries = 0;
  return h4_integral(g, quick).is_trivial(z, witness);
}

namespace {

using DenseInt = std::vector<std::vector<Integer>>;

// Columns of the result solve b x = rhs_k over Q; b must be invertible.
std::vector<std::vector<Rational>> solve_square(const DenseInt& b,
                                                const std::vector<std::vector<Rational>>& rhs) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + rhs.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(b[i][j]);
    for (std::size_t k = 0; k < rhs.size(); ++k) m[i][n + k] = rhs[k][i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    internal_check(p < n, "lattice basis is invertible");
    std::swap(m[p], m[c]);
    const Rational inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < m[r].size(); ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<std::vector<Rational>> out(rhs.size(), std::vector<Rational>(n));
  for (std::size_t k = 0; k < rhs.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) out[k][i] = m[i][n + k];
  return out;
}

}  // namespace

FiniteKernel finite_kernel(const std::vector<Integer>& source_factors,
                           const std::vector<Integer>& target_factors,
                           const std::vector<std::vector<Integer>>& matrix) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const std::size_t k = source_factors.size();
  const std::size_t l = target_factors.size();
  if (matrix.size() != l) fail(ErrorCode::kDimensionMismatch, "matrix rows != target factors");
  for (const auto& row : matrix)
    if (row.size() != k) fail(ErrorCode::kDimensionMismatch, "matrix cols != source factors");
  FiniteKernel out;
  if (k == 0) return out;

  // Generating set of the lattice {x : R x = 0 in (+) Z/t_l}.
  DenseInt gens;  // columns
  if (l == 0) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Integer> e(k);
      e[i] = 1;
      gens.push_back(e);
    }
  } else {
    DenseInt a(l, std::vector<Integer>(k + l));
    for (std::size_t r = 0; r < l; ++r) {
      for (std::size_t c = 0; c < k; ++c) a[r][c] = matrix[r][c];
      a[r][k + r] = -target_factors[r];
    }
    const SmithForm s = SmithForm::compute(sparse_from_dense(a));
    std::vector<bool> pivot_col(k + l, false);
    for (const auto& p : s.pivots()) pivot_col[p.col] = true;
    for (std::size_t j = 0; j < k + l; ++j) {
      if (pivot_col[j]) continue;
      std::vector<Integer> v(k + l);
      v[j] = 1;
      s.apply_V(v);
      v.resize(k);
      gens.push_back(std::move(v));
    }
  }
  // Basis of the lattice from the Smith form of the generating matrix.
  DenseInt gm(k, std::vector<Integer>(gens.size()));
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (std::size_t r = 0; r < k; ++r) gm[r][c] = gens[c][r];
  const SmithForm sg = SmithForm::compute(sparse_from_dense(gm));
  internal_check(sg.rank() == k, "kernel lattice has full rank");
  DenseInt basis(k, std::vector<Integer>(k));  // basis[r][i]
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = sg.pivots()[i];
    std::vector<Integer> v(k);
    v[p.row] = 1;
    sg.apply_U_inverse(v);
    for (std::size_t r = 0; r < k; ++r) basis[r][i] = p.value * v[r];
  }
  // M = B^{-1} S.
  std::vector<std::vector<Rational>> rhs(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) rhs[i][i] = Rational(source_factors[i]);
  const auto cols = solve_square(basis, rhs);
  DenseInt m(k, std::vector<Integer>(k));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < k; ++r) {
      internal_check(denominator(cols[c][r]) == 1, "S Z^k lies in the kernel lattice");
      m[r][c] = numerator(cols[c][r]);
    }
  }
  const SmithForm sm = SmithForm::compute(sparse_from_dense(m));
  internal_check(sm.rank() == k, "quotient is finite");
  for (const auto& p : sm.pivots()) {
    if (p.value == 1) continue;
    std::vector<Integer> y(k);
    y[p.row] = 1;
    sm.apply_U_inverse(y);
    std::vector<Integer> x(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < k; ++i) x[r] += basis[r][i] * y[i];
      x[r] = mod_floor(x[r], source_factors[r]);
    }
    for (std::size_t r = 0; r < l; ++r) {
      Integer acc = 0;
      for (std::size_t c = 0; c < k; ++c) acc += matrix[r][c] * x[c];
      internal_check(acc % target_factors[r] == 0, "kernel generator maps to zero");
    }
    out.invariant_factors.push_back(p.value);
    out.generators.push_back(std::move(x));
  }
  return out;
}

Integer PointedClassification::order() const {
  Integer n = 1;
  for (const Integer& d : invariant_factors) n *= d;
  return n;
}

PointedClassification classify_pointed(const FiniteGroup& g, const Subgroup& g1,
                                       const Subgroup& g2,
                                       const CohomologyOptions& options) {
  if (!is_subgroup(g, g1.elements) || !is_subgroup(g, g2.elements)) {
    fail(ErrorCode::kNotSubgroup, "factor is not a subgroup");
  }
  if (!is_exact_factorization(g, g1, g2)) {
    fail(ErrorCode::kNotExactFactorization, "G != G1 G2 exactly");
  }
  PointedClassification out;
  if (g1.elements.size() == g.order() || g2.elements.size() == g.order()) {
    out.factor_is_ambient = true;
    out.ambient.group = g;
    out.first.group = subgroup_as_group(g, g1);
    out.second.group = subgroup_as_group(g, g2);
    return out;
  }
  out.ambient = h4_integral(g, options);
  CohomologyOptions sub = options;
  sub.d4_check_max_entries = 0;
  out.first = h4_integral(subgroup_as_group(g, g1), sub);
  out.second = h4_integral(subgroup_as_group(g, g2), sub);

  std::vector<Integer> target = out.first.invariant_factors;
  target.insert(target.end(), out.second.invariant_factors.begin(),
                out.second.invariant_factors.end());
  out.restriction.assign(target.size(),
                         std::vector<Integer>(out.ambient.generators.size()));
  for (std::size_t kx = 0; kx < out.ambient.generators.size(); ++kx) {
    const IntCochain& z = out.ambient.generators[kx];
    auto c1 = out.first.coordinates(restrict_cochain(g, z, g1));
    auto c2 = out.second.coordinates(restrict_cochain(g, z, g2));
    c1.insert(c1.end(), c2.begin(), c2.end());
    for (std::size_t r = 0; r < c1.size(); ++r) out.restriction[r][kx] = c1[r];
  }
  FiniteKernel ker = finite_kernel(out.ambient.invariant_factors, target, out.restriction);
  out.invariant_factors = std::move(ker.invariant_factors);
  out.generators = std::move(ker.generators);
  for (const auto& x : out.generators) {
    IntCochain z = out.ambient.combination(x);
    internal_check(out.first.is_trivial(restrict_cochain(g, z, g1)) &&
                       out.second.is_trivial(restrict_cochain(g, z, g2)),
                   "kernel generator restricts trivially");
    out.generator_cocycles.push_back(std::move(z));
  }
  return out;
}

}  // namespace tenfact
