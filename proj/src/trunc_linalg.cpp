#include "koszulq/trunc_linalg.hpp"

#include "koszulq/errors.hpp"

namespace koszulq {

void TruncMatrix::add(std::size_t r, std::size_t c, const TruncSeries& v) {
  if (r >= rows_.size() || c >= cols_) throw UsageError("TruncMatrix::add out of range");
  if (v.order() != order_) throw UsageError("TruncMatrix::add order mismatch");
  if (v.is_zero()) return;
  auto [it, inserted] = rows_[r].try_emplace(c, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) rows_[r].erase(it);
  }
}

TruncSeries TruncMatrix::at(std::size_t r, std::size_t c) const {
  auto it = rows_.at(r).find(c);
  return it == rows_[r].end() ? TruncSeries(order_) : it->second;
}

TruncVec TruncMatrix::apply(const TruncVec& x) const {
  if (x.size() != cols_) throw UsageError("TruncMatrix::apply dimension mismatch");
  TruncVec y(rows_.size(), TruncSeries(order_));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
  return y;
}

SparseMatrix TruncMatrix::expand() const {
  const std::size_t m = order_ + 1;
  SparseMatrix out(rows_.size() * m, cols_ * m);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r])
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) out.add(r * m + i, c * m + j, v[i - j]);
  return out;
}

SparseVec flatten(const TruncVec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t m = v[i].order() + 1;
    for (std::size_t k = 0; k < m; ++k)
      if (sgn(v[i][k]) != 0) out.emplace_back(i * m + k, v[i][k]);
  }
  return out;
}

TruncVec unflatten(const SparseVec& v, std::size_t dim, std::size_t order) {
  TruncVec out(dim, TruncSeries(order));
  for (const auto& [idx, x] : v) out.at(idx / (order + 1))[idx % (order + 1)] = x;
  return out;
}

namespace {

SparseVec shift_h(const SparseVec& v, std::size_t order, std::size_t e) {
  SparseVec out;
  for (const auto& [idx, x] : v)
    if (idx % (order + 1) + e <= order) out.emplace_back(idx + e, x);
  return out;
}

}  // namespace

Subspace submodule_span(const std::vector<TruncVec>& gens, std::size_t dim, std::size_t order) {
  Subspace s(dim * (order + 1));
  for (const auto& g : gens) {
    if (g.size() != dim) throw UsageError("submodule_span: generator of wrong length");
    SparseVec f = flatten(g);
    for (std::size_t e = 0; e <= order; ++e) s.insert(shift_h(f, order, e));
  }
  return s;
}

std::vector<TruncVec> module_generators(const Subspace& m, std::size_t dim, std::size_t order) {
  Subspace acc(m.ambient());
  auto basis = m.basis();
  for (const auto& b : basis) acc.insert(shift_h(b, order, 1));
  std::vector<TruncVec> gens;
  for (const auto& b : basis) {
    if (acc.contains(b)) continue;
    gens.push_back(unflatten(b, dim, order));
    for (std::size_t e = 0; e <= order; ++e) acc.insert(shift_h(b, order, e));
  }
  return gens;
}

bool is_free_module(const Subspace& m, std::size_t order) {
  Subspace hm(m.ambient());
  for (const auto& b : m.basis()) hm.insert(shift_h(b, order, 1));
  return m.dim() == (order + 1) * (m.dim() - hm.dim());
}

std::vector<TruncVec> trunc_kernel(const TruncMatrix& m) {
  Subspace k = Subspace::span(m.cols() * (m.order() + 1), kernel_basis_sparse(m.expand()));
  return module_generators(k, m.cols(), m.order());
}

bool submodule_equal(const std::vector<TruncVec>& a, const std::vector<TruncVec>& b) {
  auto shape = [](const std::vector<TruncVec>& g, std::size_t& dim, std::size_t& order, bool& known) {
    for (const auto& v : g) {
      std::size_t d = v.size();
      std::size_t o = v.empty() ? 0 : v.front().order();
      if (known && (d != dim || o != order)) throw UsageError("submodule_equal: ambient mismatch");
      dim = d;
      order = o;
      known = true;
    }
  };
  std::size_t dim = 0, order = 0;
  bool known = false;
  shape(a, dim, order, known);
  shape(b, dim, order, known);
  if (!known) return true;
  return submodule_span(a, dim, order) == submodule_span(b, dim, order);
}

}  // namespace koszulq
