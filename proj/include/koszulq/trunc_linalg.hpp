#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "koszulq/linalg.hpp"
#include "koszulq/trunc_series.hpp"

namespace koszulq {

using TruncVec = std::vector<TruncSeries>;

/// Sparse matrix over Q[h]/(h^{N+1}).
class TruncMatrix {
 public:
  TruncMatrix(std::size_t rows, std::size_t cols, std::size_t order) : cols_(cols), order_(order), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t order() const { return order_; }

  void add(std::size_t r, std::size_t c, const TruncSeries& v);
  TruncSeries at(std::size_t r, std::size_t c) const;
  const std::map<std::size_t, TruncSeries>& row(std::size_t r) const { return rows_[r]; }

  TruncVec apply(const TruncVec& x) const;
  /// Q-matrix with each entry replaced by its multiplication block; vector
  /// index i*(N+1)+k holds the h^k coefficient of component i.
  SparseMatrix expand() const;

 private:
  std::size_t cols_;
  std::size_t order_;
  std::vector<std::map<std::size_t, TruncSeries>> rows_;
};

SparseVec flatten(const TruncVec& v);
TruncVec unflatten(const SparseVec& v, std::size_t dim, std::size_t order);

/// The Q-subspace of Q^{dim (N+1)} spanned by h^e g for all generators g.
Subspace submodule_span(const std::vector<TruncVec>& gens, std::size_t dim, std::size_t order);

/// Minimal generators of an h-stable Q-subspace: lifts of a basis of M / hM.
std::vector<TruncVec> module_generators(const Subspace& m, std::size_t dim, std::size_t order);

/// dim_Q M = (N+1) dim_Q(M/hM).
bool is_free_module(const Subspace& m, std::size_t order);

/// Generators of {v : m v = 0 mod h^{N+1}}.
std::vector<TruncVec> trunc_kernel(const TruncMatrix& m);

/// Throws UsageError if the families live in different ambient modules.
bool submodule_equal(const std::vector<TruncVec>& a, const std::vector<TruncVec>& b);

}  // namespace koszulq
