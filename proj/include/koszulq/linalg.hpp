#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "koszulq/rational.hpp"

namespace koszulq {

/// Sorted (index, value) pairs; never stores zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;
using DenseVec = std::vector<Rational>;

SparseVec to_sparse(const DenseVec& v);
DenseVec to_dense(const SparseVec& v, std::size_t n);

/// Row-major sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}
  static SparseMatrix from_dense(const std::vector<DenseVec>& rows, std::size_t cols);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Accumulates v into entry (r, c); entries that cancel to zero are erased.
  void add(std::size_t r, std::size_t c, const Rational& v);
  Rational at(std::size_t r, std::size_t c) const;
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return rows_[r]; }
  SparseVec row_vec(std::size_t r) const;
  std::size_t nonzeros() const;

  DenseVec apply(const DenseVec& x) const;
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  bool is_zero() const;

  void append_row(const SparseVec& v);
  void resize_cols(std::size_t cols) { cols_ = cols; }

 private:
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> rows_;
};

/// Incremental row echelon form over Q. Rows are inserted one at a time in
/// index order, so a row's leading column becomes its pivot: lowest row
/// first, then lowest column.
class Echelon {
 public:
  explicit Echelon(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Eliminates every pivot column from v.
  SparseVec reduce(SparseVec v) const;
  /// Adds v to the span; returns false when v was already dependent.
  bool insert(SparseVec v);
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Fully reduced basis with pivots sorted by column (the RREF rows).
  std::vector<SparseVec> rref() const;
  const std::map<std::size_t, std::size_t>& pivots() const { return pivot_row_; }

 private:
  std::size_t cols_;
  std::vector<SparseVec> rows_;                  // lead coefficient 1
  std::map<std::size_t, std::size_t> pivot_row_;  // pivot column -> row
};

/// Rank by fraction-free elimination on integer-scaled rows.
std::size_t rank(const SparseMatrix& m);
/// Rank by rational elimination (independent route used to cross-check `rank`).
std::size_t rank_rational(const SparseMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column of the RREF.
std::vector<DenseVec> kernel_basis(const SparseMatrix& m);
std::vector<SparseVec> kernel_basis_sparse(const SparseMatrix& m);

/// Some x with m x = rhs (free variables set to 0), or nullopt when inconsistent.
/// Throws UsageError if rhs.size() != m.rows().
std::optional<DenseVec> solve_linear(const SparseMatrix& m, const DenseVec& rhs);

/// Finite-dimensional subspace of Q^n held as an echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient) : ech_(ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<SparseVec>& gens);

  std::size_t ambient() const { return ech_.cols(); }
  std::size_t dim() const { return ech_.rank(); }
  bool insert(const SparseVec& v) { return ech_.insert(v); }
  bool contains(const SparseVec& v) const { return ech_.contains(v); }
  std::vector<SparseVec> basis() const { return ech_.rref(); }
  const Echelon& echelon() const { return ech_; }

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  bool operator==(const Subspace& o) const;

 private:
  Echelon ech_;
};

}  // namespace koszulq
