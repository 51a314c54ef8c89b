#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "koszulq/rational.hpp"

namespace koszulq {

/// Element of Q[h]/(h^{N+1}). The order N travels with the value; binary
/// operations require equal orders.
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order = 0) : coeffs_(order + 1) {}
  TruncSeries(std::size_t order, const Rational& constant) : coeffs_(order + 1) { coeffs_[0] = constant; }
  /// Coefficients of h^0..h^k; missing high coefficients are zero, excess ones are dropped.
  TruncSeries(std::size_t order, std::vector<Rational> coeffs);

  static TruncSeries hbar(std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  Rational& operator[](std::size_t k) { return coeffs_[k]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_unit() const { return sgn(coeffs_[0]) != 0; }
  /// Largest k with h^k dividing the element; order()+1 for zero.
  std::size_t valuation() const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(const TruncSeries& o);
  TruncSeries& operator*=(const Rational& q);
  TruncSeries operator-() const;
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const TruncSeries& b) { return a *= b; }
  friend TruncSeries operator*(TruncSeries a, const Rational& q) { return a *= q; }
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// Multiplicative inverse; throws StructuralError for non-units.
  TruncSeries inverse() const;

  /// Q-matrix of multiplication by this element on the basis h^0..h^N
  /// (lower triangular Toeplitz block).
  std::vector<std::vector<Rational>> multiplication_block() const;

  std::string to_string() const;

 private:
  void check_order(const TruncSeries& o) const;
  std::vector<Rational> coeffs_;
};

}  // namespace koszulq
