#include "tenfact/smith.hpp"

#include "tenfact/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <type_traits>
#include <string>

namespace tenfact {

void SparseIntMatrix::add(std::size_t r, std::size_t c, const Integer& v) {
  if (r >= rows || c >= cols) fail(ErrorCode::kIndexOutOfRange, "matrix entry out of range");
  row_entries[r].emplace_back(c, v);
}

void SparseIntMatrix::normalize() {
  for (SparseRow& row : row_entries) {
    std::sort(row.begin(), row.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    SparseRow merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c) {
        merged.back().second += v;
      } else {
        merged.emplace_back(c, std::move(v));
      }
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    row = std::move(merged);
  }
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const SparseRow& row : row_entries) n += row.size();
  return n;
}

std::vector<Integer> SparseIntMatrix::multiply(const std::vector<Integer>& x) const {
  if (x.size() != cols) fail(ErrorCode::kDimensionMismatch, "vector length != columns");
  std::vector<Integer> y(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (const auto& [c, v] : row_entries[r]) y[r] += v * x[c];
  return y;
}

SparseIntMatrix sparse_from_dense(const std::vector<std::vector<Integer>>& a) {
  SparseIntMatrix m(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a[r].size(); ++c)
      if (a[r][c] != 0) m.row_entries[r].emplace_back(c, a[r][c]);
  return m;
}

std::size_t memory_limit_mb_from_env() {
  const char* v = std::getenv("TENFACT_LIMIT_MB");
  if (!v || !*v) return 0;
  char* end = nullptr;
  unsigned long long mb = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0') return 0;
  return static_cast<std::size_t>(mb);
}

namespace {

constexpr std::size_t kEntryBytes = sizeof(std::pair<std::size_t, Integer>) + 16;

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_add(const Integer& a, const Integer& b) { return a + b; }

// Unit-pivot elimination over entries of type T. Column row-lists are
// maintained lazily: they may hold stale or repeated rows, filtered on use.
template <typename T>
class SparseEliminator {
 public:
  using Row = std::vector<std::pair<std::size_t, T>>;

  SparseEliminator(const SparseIntMatrix& a) : rows_(a.rows), col_rows_(a.cols) {
    for (std::size_t r = 0; r < a.rows; ++r) {
      rows_[r].reserve(a.row_entries[r].size());
      for (const auto& [c, v] : a.row_entries[r]) {
        if (c >= a.cols) fail(ErrorCode::kIndexOutOfRange, "matrix entry out of range");
        if constexpr (std::is_same_v<T, Integer>) {
          rows_[r].emplace_back(c, v);
        } else {
          if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
              v < std::numeric_limits<std::int64_t>::min() / 4) {
            throw Overflow{};
          }
          rows_[r].emplace_back(c, static_cast<std::int64_t>(v));
        }
        col_rows_[c].push_back(r);
        ++nnz_;
      }
    }
    row_done_.assign(a.rows, false);
    col_done_.assign(a.cols, false);
  }

  std::size_t nonzeros() const { return nnz_; }

  // Runs to completion; log receives (kind, target, source, coef) with kind
  // 'r' for row ops, 'c' for column ops and 'p' for unit pivots.
  template <typename Log, typename Check>
  void run(Log&& log, Check&& check) {
    constexpr std::size_t kColumnsExamined = 8;
    std::vector<std::size_t> order;
    while (true) {
      order.clear();
      for (std::size_t c = 0; c < col_rows_.size(); ++c)
        if (!col_done_[c] && !col_rows_[c].empty()) order.push_back(c);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        return col_rows_[l].size() < col_rows_[r].size();
      });
      std::size_t best_row = SmithForm::npos;
      std::size_t best_col = SmithForm::npos;
      std::size_t best_cost = static_cast<std::size_t>(-1);
      std::size_t examined = 0;
      for (std::size_t c : order) {
        compact(c);
        bool found = false;
        const std::size_t count = col_rows_[c].size();
        for (std::size_t r : col_rows_[c]) {
          const T* v = find(r, c);
          if (!(*v == 1 || *v == -1)) continue;
          found = true;
          const std::size_t cost = (count - 1) * (rows_[r].size() - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best_row = r;
            best_col = c;
          }
        }
        if (found && ++examined == kColumnsExamined) break;
        if (best_cost == 0) break;
      }
      if (best_row == SmithForm::npos) break;

      const std::size_t r = best_row;
      const std::size_t c = best_col;
      const T p = *find(r, c);
      for (std::size_t r2 : col_rows_[c]) {
        if (r2 == r) continue;
        const T q = checked_mul(-*find(r2, c), p);
        add_row(r2, r, q);
        log('r', r2, r, q);
      }
      for (const auto& [c2, v] : rows_[r]) {
        if (c2 == c) continue;
        log('c', c2, c, checked_mul(-v, p));
        --nnz_;
      }
      rows_[r].clear();
      --nnz_;
      if (p < 0) log('r', r, r, T(0));
      row_done_[r] = true;
      col_done_[c] = true;
      col_rows_[c].clear();
      log('p', r, c, T(1));
      check(nnz_);
    }
  }

  // Remaining rows and columns and their entries.
  void core(std::vector<std::size_t>& core_r, std::vector<std::size_t>& core_c,
            std::vector<std::vector<Integer>>& dense) const {
    std::vector<bool> used(col_rows_.size(), false);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (row_done_[r] || rows_[r].empty()) continue;
      core_r.push_back(r);
      for (const auto& e : rows_[r]) used[e.first] = true;
    }
    std::vector<std::size_t> pos(col_rows_.size(), SmithForm::npos);
    for (std::size_t c = 0; c < used.size(); ++c) {
      if (!used[c]) continue;
      pos[c] = core_c.size();
      core_c.push_back(c);
    }
    dense.assign(core_r.size(), std::vector<Integer>(core_c.size()));
    for (std::size_t i = 0; i < core_r.size(); ++i)
      for (const auto& [c, v] : rows_[core_r[i]]) dense[i][pos[c]] = Integer(v);
  }

 private:
  const T* find(std::size_t r, std::size_t c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
  }

  void compact(std::size_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::size_t r) { return row_done_[r] || find(r, c) == nullptr; });
  }

  void add_row(std::size_t t, std::size_t s, const T& q) {
    const Row& src = rows_[s];
    Row& dst = rows_[t];
    scratch_.clear();
    scratch_.reserve(dst.size() + src.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        scratch_.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        scratch_.emplace_back(src[j].first, checked_mul(q, src[j].second));
        col_rows_[src[j].first].push_back(t);
        ++nnz_;
        ++j;
      } else {
        T v = checked_add(dst[i].second, checked_mul(q, src[j].second));
        if (v == 0) {
          --nnz_;
        } else {
          scratch_.emplace_back(dst[i].first, std::move(v));
        }
        ++i;
        ++j;
      }
    }
    dst.swap(scratch_);
  }

  std::vector<Row> rows_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::vector<bool> row_done_;
  std::vector<bool> col_done_;
  std::size_t nnz_ = 0;
  Row scratch_;
};

}  // namespace

SmithForm SmithForm::compute(const SparseIntMatrix& a, const SmithOptions& options) {
  SmithForm f;
  f.rows_ = a.rows;
  f.cols_ = a.cols;
  f.pivot_row_.assign(a.rows, npos);
  const std::size_t limit_bytes = options.memory_limit_mb << 20;
  auto check_memory = [&](std::size_t bytes, const char* phase) {
    if (limit_bytes != 0 && bytes > limit_bytes) {
      fail(ErrorCode::kResourceLimit,
           std::string("Smith normal form ") + phase + " needs about " +
               std::to_string(bytes >> 20) + " MB, over TENFACT_LIMIT_MB=" +
               std::to_string(options.memory_limit_mb));
    }
  };
  check_memory(a.nonzeros() * kEntryBytes, "input");

  std::vector<std::size_t> core_r;
  std::vector<std::size_t> core_c;
  std::vector<std::vector<Integer>> d;
  std::size_t nnz_left = 0;
  auto sparse = [&](auto tag) {
    using T = decltype(tag);
    SparseEliminator<T> e(a);
    auto log = [&](char kind, std::size_t t, std::size_t s, const T& q) {
      if (kind == 'r') {
        f.row_ops_.push_back({t, s, Integer(q)});
      } else if (kind == 'c') {
        f.col_ops_.push_back({t, s, Integer(q)});
      } else {
        f.pivot_row_[t] = f.pivots_.size();
        f.pivots_.push_back({t, s, 1});
      }
    };
    auto check = [&](std::size_t nnz) {
      check_memory(nnz * kEntryBytes + (f.row_ops_.size() + f.col_ops_.size()) * sizeof(Op),
                   "elimination");
    };
    e.run(log, check);
    nnz_left = e.nonzeros();
    e.core(core_r, core_c, d);
  };
  try {
    sparse(std::int64_t{0});
  } catch (const Overflow&) {
    f.row_ops_.clear();
    f.col_ops_.clear();
    f.pivots_.clear();
    f.pivot_row_.assign(a.rows, npos);
    sparse(Integer(0));
  }
  f.sparse_pivots_ = f.pivots_.size();
  if (options.progress) {
    options.progress("sparse elimination: " + std::to_string(f.sparse_pivots_) +
                     " unit pivots, " + std::to_string(nnz_left) + " nonzeros left");
  }

  // Dense phase on the remaining core.
  f.core_rows_ = core_r.size();
  f.core_cols_ = core_c.size();
  if (core_r.empty()) return f;
  if (options.progress) {
    options.progress("dense core " + std::to_string(core_r.size()) + " x " +
                     std::to_string(core_c.size()));
  }
  check_memory(core_r.size() * core_c.size() * sizeof(Integer) +
                   (f.row_ops_.size() + f.col_ops_.size()) * sizeof(Op),
               "dense core");

  const std::size_t m = core_r.size();
  const std::size_t n = core_c.size();

  std::vector<bool> ract(m, true);
  std::vector<bool> cact(n, true);
  auto row_add = [&](std::size_t t, std::size_t s, const Integer& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (d[s][j] != 0) d[t][j] += q * d[s][j];
    f.row_ops_.push_back({core_r[t], core_r[s], q});
  };
  auto col_add = [&](std::size_t t, std::size_t s, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (d[i][s] != 0) d[i][t] += q * d[i][s];
    f.col_ops_.push_back({core_c[t], core_c[s], q});
  };

  while (true) {
    std::size_t pi = npos;
    std::size_t pj = npos;
    for (std::size_t i = 0; i < m; ++i) {
      if (!ract[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!cact[j] || d[i][j] == 0) continue;
        if (pi == npos || abs(d[i][j]) < abs(d[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == npos) break;

    while (true) {
      bool clean = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (!ract[i] || i == pi || d[i][pj] == 0) continue;
        const Integer q = d[i][pj] / d[pi][pj];
        if (q != 0) row_add(i, pi, -q);
        if (d[i][pj] != 0) clean = false;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!cact[j] || j == pj || d[pi][j] == 0) continue;
        const Integer q = d[pi][j] / d[pi][pj];
        if (q != 0) col_add(j, pj, -q);
        if (d[pi][j] != 0) clean = false;
      }
      if (!clean) {
        std::size_t ni = pi;
        std::size_t nj = pj;
        for (std::size_t i = 0; i < m; ++i)
          if (ract[i] && d[i][pj] != 0 && abs(d[i][pj]) < abs(d[ni][nj])) {
            ni = i;
            nj = pj;
          }
        for (std::size_t j = 0; j < n; ++j)
          if (cact[j] && d[pi][j] != 0 && abs(d[pi][j]) < abs(d[ni][nj])) {
            ni = pi;
            nj = j;
          }
        pi = ni;
        pj = nj;
        continue;
      }
      std::size_t bad = npos;
      for (std::size_t i = 0; i < m && bad == npos; ++i) {
        if (!ract[i] || i == pi) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (cact[j] && j != pj && d[i][j] % d[pi][pj] != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == npos) break;
      row_add(pi, bad, 1);
    }
    if (d[pi][pj] < 0) {
      for (std::size_t j = 0; j < n; ++j) d[pi][j] = -d[pi][j];
      f.row_ops_.push_back({core_r[pi], core_r[pi], 0});
    }
    ract[pi] = false;
    cact[pj] = false;
    f.pivot_row_[core_r[pi]] = f.pivots_.size();
    f.pivots_.push_back({core_r[pi], core_c[pj], d[pi][pj]});
  }
  return f;
}

std::vector<Integer> SmithForm::torsion() const {
  std::vector<Integer> out;
  for (const Pivot& p : pivots_)
    if (p.value > 1) out.push_back(p.value);
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
void SmithForm::apply_U_impl(std::vector<T>& z) const {
  if (z.size() != rows_) fail(ErrorCode::kDimensionMismatch, "vector length != rows");
  for (const Op& op : row_ops_) {
    if (op.coef == 0) {
      z[op.target] = -z[op.target];
    } else if (z[op.source] != 0) {
      z[op.target] += T(op.coef) * z[op.source];
    }
  }
}

template <typename T>
void SmithForm::apply_V_impl(std::vector<T>& w) const {
  if (w.size() != cols_) fail(ErrorCode::kDimensionMismatch, "vector length != columns");
  for (auto it = col_ops_.rbegin(); it != col_ops_.rend(); ++it) {
    if (w[it->target] != 0) w[it->source] += T(it->coef) * w[it->target];
  }
}

void SmithForm::apply_U(std::vector<Integer>& z) const { apply_U_impl(z); }
void SmithForm::apply_U(std::vector<Rational>& z) const { apply_U_impl(z); }
void SmithForm::apply_V(std::vector<Integer>& w) const { apply_V_impl(w); }
void SmithForm::apply_V(std::vector<Rational>& w) const { apply_V_impl(w); }

void SmithForm::apply_U_inverse(std::vector<Integer>& z) const {
  if (z.size() != rows_) fail(ErrorCode::kDimensionMismatch, "vector length != rows");
  for (auto it = row_ops_.rbegin(); it != row_ops_.rend(); ++it) {
    if (it->coef == 0) {
      z[it->target] = -z[it->target];
    } else if (z[it->source] != 0) {
      z[it->target] -= it->coef * z[it->source];
    }
  }
}

bool SmithForm::solve_integral(const std::vector<Integer>& b,
                               std::vector<Integer>& y) const {
  std::vector<Integer> t = b;
  apply_U(t);
  for (std::size_t r = 0; r < rows_; ++r)
    if (pivot_row_[r] == npos && t[r] != 0) return false;
  y.assign(cols_, Integer(0));
  for (const Pivot& p : pivots_) {
    if (t[p.row] % p.value != 0) return false;
    y[p.col] = t[p.row] / p.value;
  }
  apply_V(y);
  return true;
}

bool SmithForm::solve_rational(const std::vector<Rational>& b,
                               std::vector<Rational>& y) const {
  std::vector<Rational> t = b;
  apply_U(t);
  for (std::size_t r = 0; r < rows_; ++r)
    if (pivot_row_[r] == npos && t[r] != 0) return false;
  y.assign(cols_, Rational(0));
  for (const Pivot& p : pivots_) y[p.col] = t[p.row] / Rational(p.value);
  apply_V(y);
  return true;
}

}  // namespace tenfact
