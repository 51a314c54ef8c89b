#include "koszulq/trunc_series.hpp"

#include "koszulq/errors.hpp"

namespace koszulq {

TruncSeries::TruncSeries(std::size_t order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  coeffs_.resize(order + 1);
}

TruncSeries TruncSeries::hbar(std::size_t order) {
  TruncSeries h(order);
  if (order >= 1) h.coeffs_[1] = 1;
  return h;
}

bool TruncSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

std::size_t TruncSeries::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (sgn(coeffs_[k]) != 0) return k;
  return coeffs_.size();
}

void TruncSeries::check_order(const TruncSeries& o) const {
  if (o.coeffs_.size() != coeffs_.size())
    throw UsageError("truncation order mismatch: " + std::to_string(order()) + " vs " + std::to_string(o.order()));
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  check_order(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  check_order(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& o) {
  check_order(o);
  std::vector<Rational> r(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; i + j < coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TruncSeries TruncSeries::inverse() const {
  if (!is_unit()) throw StructuralError("inverse of non-unit truncated series " + to_string());
  TruncSeries inv(order());
  inv.coeffs_[0] = 1 / coeffs_[0];
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * inv.coeffs_[k - j];
    inv.coeffs_[k] = -acc * inv.coeffs_[0];
  }
  return inv;
}

std::vector<std::vector<Rational>> TruncSeries::multiplication_block() const {
  const std::size_t m = coeffs_.size();
  std::vector<std::vector<Rational>> block(m, std::vector<Rational>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c <= r; ++c) block[r][c] = coeffs_[r - c];
  return block;
}

std::string TruncSeries::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + koszulq::to_string(coeffs_[k]) + ")";
    if (k == 1) s += "h";
    if (k > 1) s += "h^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace koszulq
