#include "koszulq/linalg.hpp"

#include <algorithm>

#include "koszulq/errors.hpp"

namespace koszulq {

SparseVec to_sparse(const DenseVec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s.emplace_back(i, v[i]);
  return s;
}

DenseVec to_dense(const SparseVec& v, std::size_t n) {
  DenseVec d(n);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix SparseMatrix::from_dense(const std::vector<DenseVec>& rows, std::size_t cols) {
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("from_dense: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      if (sgn(rows[r][c]) != 0) m.rows_[r].emplace(c, rows[r][c]);
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace(i, 1);
  return m;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_.size() || c >= cols_) throw UsageError("SparseMatrix::add out of range");
  if (sgn(v) == 0) return;
  auto [it, inserted] = rows_[r].try_emplace(c, v);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += v;
    if (sgn(it->second) == 0) rows_[r].erase(it);
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = rows_.at(r).find(c);
  return it == rows_[r].end() ? Rational(0) : it->second;
}

SparseVec SparseMatrix::row_vec(std::size_t r) const {
  return SparseVec(rows_.at(r).begin(), rows_[r].end());
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

DenseVec SparseMatrix::apply(const DenseVec& x) const {
  if (x.size() != cols_) throw UsageError("SparseMatrix::apply dimension mismatch");
  DenseVec y(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace(r, v);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows()) throw UsageError("SparseMatrix product dimension mismatch");
  SparseMatrix p(rows_.size(), o.cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [k, v] : rows_[r])
      for (const auto& [c, w] : o.rows_[k]) p.add(r, c, v * w);
  return p;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

void SparseMatrix::append_row(const SparseVec& v) {
  std::map<std::size_t, Rational> row;
  for (const auto& [c, x] : v) {
    if (c >= cols_) throw UsageError("append_row: column out of range");
    if (sgn(x) != 0) row.emplace(c, x);
  }
  rows_.push_back(std::move(row));
}

// ---------------------------------------------------------------------------
// Echelon

SparseVec Echelon::reduce(SparseVec v) const {
  if (pivot_row_.empty() || v.empty()) return v;
  std::map<std::size_t, Rational> work(v.begin(), v.end());
  SparseVec out;
  while (!work.empty()) {
    auto it = work.begin();
    std::size_t col = it->first;
    Rational coef = std::move(it->second);
    work.erase(it);
    auto piv = pivot_row_.find(col);
    if (piv == pivot_row_.end()) {
      out.emplace_back(col, std::move(coef));
      continue;
    }
    const SparseVec& p = rows_[piv->second];
    for (std::size_t k = 1; k < p.size(); ++k) {
      auto [w, inserted] = work.try_emplace(p[k].first, 0);
      w->second -= coef * p[k].second;
      if (sgn(w->second) == 0) work.erase(w);
    }
  }
  return out;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rational lead = v.front().second;
  if (lead != 1)
    for (auto& e : v) e.second /= lead;
  pivot_row_.emplace(v.front().first, rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

std::vector<SparseVec> Echelon::rref() const {
  // Back-substitute from the highest pivot column down.
  std::map<std::size_t, SparseVec> done;
  Echelon later(cols_);
  for (auto it = pivot_row_.rbegin(); it != pivot_row_.rend(); ++it) {
    SparseVec row = rows_[it->second];
    SparseVec head{row.front()};
    SparseVec tail(row.begin() + 1, row.end());
    tail = later.reduce(std::move(tail));
    head.insert(head.end(), tail.begin(), tail.end());
    done.emplace(it->first, head);
    later.pivot_row_.emplace(it->first, later.rows_.size());
    later.rows_.push_back(std::move(head));
  }
  std::vector<SparseVec> out;
  out.reserve(done.size());
  for (auto& [c, r] : done) out.push_back(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------
// rank, kernel, solve

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

IntRow primitive_integer_row(const std::map<std::size_t, Rational>& row) {
  Integer l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& [c, v] : row) {
    Integer x = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    out.emplace_back(c, std::move(x));
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  return out;
}

void make_primitive(IntRow& row) {
  Integer g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  // Fraction-free: row <- lead(p) * row - row[k] * p, then divide out the content.
  std::map<std::size_t, IntRow> pivots;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    IntRow row = primitive_integer_row(m.row(r));
    while (!row.empty()) {
      auto piv = pivots.find(row.front().first);
      if (piv == pivots.end()) break;
      const IntRow& p = piv->second;
      Integer a = p.front().second;
      Integer b = row.front().second;
      Integer g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      a /= g;
      b /= g;
      IntRow next;
      next.reserve(row.size() + p.size());
      std::size_t i = 1, j = 1;
      while (i < row.size() || j < p.size()) {
        if (j >= p.size() || (i < row.size() && row[i].first < p[j].first)) {
          next.emplace_back(row[i].first, a * row[i].second);
          ++i;
        } else if (i >= row.size() || p[j].first < row[i].first) {
          next.emplace_back(p[j].first, -b * p[j].second);
          ++j;
        } else {
          Integer x = a * row[i].second - b * p[j].second;
          if (x != 0) next.emplace_back(row[i].first, std::move(x));
          ++i;
          ++j;
        }
      }
      make_primitive(next);
      row = std::move(next);
    }
    if (!row.empty()) pivots.emplace(row.front().first, std::move(row));
  }
  return pivots.size();
}

std::size_t rank_rational(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row_vec(r));
  return e.rank();
}

std::vector<SparseVec> kernel_basis_sparse(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row_vec(r));
  auto rref = e.rref();
  std::vector<std::size_t> pivot_cols;
  pivot_cols.reserve(rref.size());
  for (const auto& row : rref) pivot_cols.push_back(row.front().first);
  // For each free column f: v_f = 1, v_{pivot(r)} = -rref[r][f].
  std::map<std::size_t, SparseVec> by_free;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f)
    if (!is_pivot[f]) by_free[f] = {};
  for (std::size_t r = 0; r < rref.size(); ++r)
    for (std::size_t k = 1; k < rref[r].size(); ++k) by_free[rref[r][k].first].emplace_back(pivot_cols[r], -rref[r][k].second);
  std::vector<SparseVec> out;
  out.reserve(by_free.size());
  for (auto& [f, v] : by_free) {
    v.emplace_back(f, 1);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<DenseVec> kernel_basis(const SparseMatrix& m) {
  std::vector<DenseVec> out;
  for (const auto& v : kernel_basis_sparse(m)) out.push_back(to_dense(v, m.cols()));
  return out;
}

std::optional<DenseVec> solve_linear(const SparseMatrix& m, const DenseVec& rhs) {
  if (rhs.size() != m.rows())
    throw UsageError("solve_linear: rhs has " + std::to_string(rhs.size()) + " entries, matrix has " +
                     std::to_string(m.rows()) + " rows");
  const std::size_t n = m.cols();
  Echelon e(n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec row = m.row_vec(r);
    if (sgn(rhs[r]) != 0) row.emplace_back(n, rhs[r]);
    e.insert(std::move(row));
  }
  if (e.pivots().count(n)) return std::nullopt;
  DenseVec x(n);
  for (const auto& row : e.rref()) {
    if (row.back().first == n) x[row.front().first] = row.back().second;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(std::size_t ambient, const std::vector<SparseVec>& gens) {
  Subspace s(ambient);
  for (const auto& g : gens) s.insert(g);
  return s;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (o.ambient() != ambient()) throw UsageError("Subspace sum: ambient mismatch");
  Subspace s = *this;
  for (const auto& v : o.basis()) s.insert(v);
  return s;
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.ambient() != ambient()) throw UsageError("Subspace intersection: ambient mismatch");
  auto u = basis();
  auto w = o.basis();
  Subspace out(ambient());
  if (u.empty() || w.empty()) return out;
  // Kernel of (a, b) -> sum a_i u_i - sum b_j w_j.
  SparseMatrix cols(u.size() + w.size(), ambient());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (const auto& [c, x] : u[i]) cols.add(i, c, x);
  for (std::size_t j = 0; j < w.size(); ++j)
    for (const auto& [c, x] : w[j]) cols.add(u.size() + j, c, -x);
  for (const auto& k : kernel_basis_sparse(cols.transpose())) {
    std::map<std::size_t, Rational> acc;
    for (const auto& [i, a] : k) {
      if (i >= u.size()) break;
      for (const auto& [c, x] : u[i]) acc[c] += a * x;
    }
    SparseVec v;
    for (auto& [c, x] : acc)
      if (sgn(x) != 0) v.emplace_back(c, x);
    out.insert(v);
  }
  return out;
}

bool Subspace::operator==(const Subspace& o) const {
  if (o.ambient() != ambient() || o.dim() != dim()) return false;
  for (const auto& v : o.basis())
    if (!contains(v)) return false;
  return true;
}

}  // namespace koszulq
