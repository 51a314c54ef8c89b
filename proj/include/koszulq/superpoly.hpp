#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "koszulq/rational.hpp"

namespace koszulq {

/// Exponent vector; odd variables have exponent 0 or 1 and are ordered by index.
using Monomial = std::vector<std::uint16_t>;

/// Polynomial in a free supercommutative algebra whose variable i has parity
/// parity[i] (true = odd). Monomials are stored with odd factors in
/// increasing index order.
class SPoly {
 public:
  using Parity = std::vector<bool>;

  SPoly() : parity_(std::make_shared<const Parity>()) {}
  explicit SPoly(std::shared_ptr<const Parity> parity) : parity_(std::move(parity)) {}

  static SPoly constant(std::shared_ptr<const Parity> parity, const Rational& c);
  static SPoly variable(std::shared_ptr<const Parity> parity, std::size_t i);
  static SPoly monomial(std::shared_ptr<const Parity> parity, Monomial m, const Rational& c);

  std::size_t nvars() const { return parity_->size(); }
  const std::shared_ptr<const Parity>& parity_ptr() const { return parity_; }
  bool odd(std::size_t i) const { return (*parity_)[i]; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total parity of a monomial.
  bool monomial_parity(const Monomial& m) const;
  /// Adds c * m (m already canonical).
  void add_term(const Monomial& m, const Rational& c);

  SPoly& operator+=(const SPoly& o);
  SPoly& operator-=(const SPoly& o);
  SPoly& operator*=(const Rational& c);
  SPoly operator-() const;
  friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
  friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
  friend SPoly operator*(SPoly a, const Rational& c) { return a *= c; }
  friend SPoly operator*(const Rational& c, SPoly a) { return a *= c; }
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  friend bool operator==(const SPoly& a, const SPoly& b);

  /// Left derivative d/dz_i (acts from the left with the Koszul sign of moving past earlier odd factors).
  SPoly derivative(std::size_t i) const;
  /// Right derivative: moves past later odd factors.
  SPoly right_derivative(std::size_t i) const;

  /// Renames variable i to target[i] in an algebra with parities `into`
  /// (parity must be preserved); target[i] < 0 sends the variable to zero.
  /// Odd variables mapping to the same target multiply to zero.
  SPoly rename(std::shared_ptr<const Parity> into, const std::vector<long>& target) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void check_same(const SPoly& o) const;
  std::shared_ptr<const Parity> parity_;
  std::map<Monomial, Rational> terms_;
};

/// Sign of the product of two canonical monomials, or 0 if an odd variable repeats.
int product_sign(const SPoly::Parity& parity, const Monomial& a, const Monomial& b);

/// Odd Poisson bracket (F,G) = sum_a (F d<q_a)(d>theta_a G) - (F d<theta_a)(d>q_a G)
/// for conjugate pairs (q_a, theta_a) of opposite parity.
SPoly antibracket(const SPoly& f, const SPoly& g, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

/// Polyvector field on V with polynomial coefficients: even x_1..x_n and odd
/// xi_1..xi_n (variables 0..n-1 and n..2n-1). The dual flavour is the same
/// layout with the parities swapped: odd coordinates x'_j = xi_j and even
/// momenta xi'_i = d/dxi_i, which is where the duality map lands.
class SuperPolynomial {
 public:
  enum class Flavor { standard, dual };

  explicit SuperPolynomial(std::size_t n = 0, Flavor flavor = Flavor::standard);
  SuperPolynomial(std::size_t n, Flavor flavor, SPoly poly);

  static SuperPolynomial constant(std::size_t n, const Rational& c, Flavor flavor = Flavor::standard);
  /// x_i, 1-based.
  static SuperPolynomial x(std::size_t n, std::size_t i, Flavor flavor = Flavor::standard);
  /// xi_i, 1-based.
  static SuperPolynomial xi(std::size_t n, std::size_t i, Flavor flavor = Flavor::standard);
  /// coef * x^kappa xi_{L}, with L given in any order (the monomial picks up the reordering sign).
  static SuperPolynomial term(std::size_t n, const Rational& coef, const std::vector<unsigned>& kappa,
                              const std::vector<std::size_t>& xi_indices, Flavor flavor = Flavor::standard);

  static std::shared_ptr<const SPoly::Parity> parity_for(std::size_t n, Flavor flavor);

  std::size_t n() const { return n_; }
  Flavor flavor() const { return flavor_; }
  const SPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  /// (deg_S, deg_Lambda) of a monomial.
  static std::pair<unsigned, unsigned> bidegree(const Monomial& m, std::size_t n);
  /// Single Lambda-degree of every term, or -1 if inhomogeneous; zero reports 0.
  int lambda_degree() const;
  /// Component with deg_Lambda = k.
  SuperPolynomial lambda_component(unsigned k) const;
  /// Component with (deg_S, deg_Lambda) = (s, k).
  SuperPolynomial bicomponent(unsigned s, unsigned k) const;

  SuperPolynomial& operator+=(const SuperPolynomial& o);
  SuperPolynomial& operator-=(const SuperPolynomial& o);
  SuperPolynomial& operator*=(const Rational& c);
  SuperPolynomial operator-() const;
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator*(SuperPolynomial a, const Rational& c) { return a *= c; }
  friend SuperPolynomial operator*(const Rational& c, SuperPolynomial a) { return a *= c; }
  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b);

  std::string to_string() const;

 private:
  std::size_t n_;
  Flavor flavor_;
  SPoly poly_;
};

/// Supercommutative product.
SuperPolynomial wedge(const SuperPolynomial& a, const SuperPolynomial& b);
/// d/dx_i, 1-based.
SuperPolynomial partial_x(std::size_t i, const SuperPolynomial& p);
/// Left derivative d/dxi_i, 1-based.
SuperPolynomial partial_xi(std::size_t i, const SuperPolynomial& p);

/// Schouten-Nijenhuis bracket [a,b] = a.b - (-1)^{(ka-1)(kb-1)} b.a with
/// a.b = sum_i (a d</dxi_i)(db/dx_i), where a d</dxi_i is the right derivative,
/// extended bilinearly over Lambda-degrees. This equals minus the antibracket.
/// On the dual flavour it is the antibracket with odd coordinates x'_i and even
/// momenta xi'_i, i.e. the Schouten bracket of the dual space with the overall
/// sign under which duality_map (with every sign +1) is a Lie morphism.
SuperPolynomial schouten(const SuperPolynomial& a, const SuperPolynomial& b);

/// Global sign of the duality map on a term of bidegree (k, l); see the
/// convention notes. Chosen so that the map intertwines the brackets.
int duality_sign(unsigned k, unsigned l);
/// x^kappa xi^L -> eps(k,l) x'^L xi'^kappa; standard and dual flavours are exchanged.
SuperPolynomial duality_map(const SuperPolynomial& p);

/// schouten(b, b) == 0.
bool is_poisson(const SuperPolynomial& b);
/// Every term has Lambda-degree 2 and x-degree 2.
bool is_quadratic_bivector(const SuperPolynomial& b);

/// Evaluates the polyvector field gamma (homogeneous of Lambda-degree k) on
/// polynomial functions f_1..f_k:
/// sum_{i_1..i_k} (d/dxi_{i_k} ... d/dxi_{i_1} gamma) df_1/dx_{i_1} ... df_k/dx_{i_k}.
/// This is gamma(df_1 ^ ... ^ df_k), with no 1/k! (hkr adds it).
/// Throws UsageError if gamma is inhomogeneous, k != fs.size(), or an f has odd part.
SuperPolynomial contract(const SuperPolynomial& gamma, const std::vector<SuperPolynomial>& fs);

}  // namespace koszulq
