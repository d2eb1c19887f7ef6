#pragma once

// Smith normal form of sparse integer matrices with logged unimodular
// row and column operations: U A V = D.

#include "tenfact/integer.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tenfact {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column

struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseRow> row_entries;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_entries(r) {}

  // Adds v to entry (r, c); rows must be finalized with normalize().
  void add(std::size_t r, std::size_t c, const Integer& v);
  // Sorts rows, merges duplicates and drops zeros.
  void normalize();
  std::size_t nonzeros() const;

  std::vector<Integer> multiply(const std::vector<Integer>& x) const;
};

// TENFACT_LIMIT_MB, or 0 (no limit) when unset.
std::size_t memory_limit_mb_from_env();

struct SmithOptions {
  std::size_t memory_limit_mb = memory_limit_mb_from_env();
  // Optional phase messages (never written to standard output).
  std::function<void(const std::string&)> progress;
};

class SmithForm {
 public:
  struct Pivot {
    std::size_t row;
    std::size_t col;
    Integer value;  // positive
  };

  // Throws kResourceLimit when the working set would exceed the limit.
  static SmithForm compute(const SparseIntMatrix& a, const SmithOptions& options = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }
  // Elimination order; values form a divisibility chain.
  const std::vector<Pivot>& pivots() const { return pivots_; }
  // Pivot values greater than 1.
  std::vector<Integer> torsion() const;
  // Pivot index by row, or npos.
  std::size_t pivot_of_row(std::size_t row) const { return pivot_row_[row]; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t sparse_pivots() const { return sparse_pivots_; }
  std::size_t core_rows() const { return core_rows_; }
  std::size_t core_cols() const { return core_cols_; }

  void apply_U(std::vector<Integer>& z) const;
  void apply_U(std::vector<Rational>& z) const;
  void apply_U_inverse(std::vector<Integer>& z) const;
  void apply_V(std::vector<Integer>& w) const;
  void apply_V(std::vector<Rational>& w) const;

  // Solves A y = b over the integers; false when no integral solution.
  bool solve_integral(const std::vector<Integer>& b, std::vector<Integer>& y) const;
  // Solves A y = b over the rationals; false when b is not in the column space.
  bool solve_rational(const std::vector<Rational>& b, std::vector<Rational>& y) const;

 private:
  struct Op {
    std::size_t target;
    std::size_t source;
    Integer coef;  // target += coef * source; coef == 0 means target = -target
  };

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Pivot> pivots_;
  std::vector<std::size_t> pivot_row_;
  std::vector<Op> row_ops_;
  std::vector<Op> col_ops_;
  std::size_t sparse_pivots_ = 0;
  std::size_t core_rows_ = 0;
  std::size_t core_cols_ = 0;

  template <typename T>
  void apply_U_impl(std::vector<T>& z) const;
  template <typename T>
  void apply_V_impl(std::vector<T>& w) const;
};

// Dense convenience wrapper.
SparseIntMatrix sparse_from_dense(const std::vector<std::vector<Integer>>& a);

}  // namespace tenfact
