#include "koszulq/superpoly.hpp"

#include <algorithm>
#include <mutex>

#include "koszulq/errors.hpp"

namespace koszulq {

// ---------------------------------------------------------------------------
// SPoly

SPoly SPoly::constant(std::shared_ptr<const Parity> parity, const Rational& c) {
  SPoly p(std::move(parity));
  p.add_term(Monomial(p.nvars(), 0), c);
  return p;
}

SPoly SPoly::variable(std::shared_ptr<const Parity> parity, std::size_t i) {
  SPoly p(std::move(parity));
  if (i >= p.nvars()) throw UsageError("SPoly::variable index out of range");
  Monomial m(p.nvars(), 0);
  m[i] = 1;
  p.add_term(m, 1);
  return p;
}

SPoly SPoly::monomial(std::shared_ptr<const Parity> parity, Monomial m, const Rational& c) {
  SPoly p(std::move(parity));
  if (m.size() != p.nvars()) throw UsageError("SPoly::monomial length mismatch");
  for (std::size_t i = 0; i < m.size(); ++i)
    if (p.odd(i) && m[i] > 1) return p;
  p.add_term(m, c);
  return p;
}

bool SPoly::monomial_parity(const Monomial& m) const {
  bool par = false;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (odd(i) && (m[i] & 1)) par = !par;
  return par;
}

void SPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void SPoly::check_same(const SPoly& o) const {
  if (parity_ != o.parity_ && *parity_ != *o.parity_) throw UsageError("super-polynomials over different algebras");
}

SPoly& SPoly::operator+=(const SPoly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SPoly& SPoly::operator-=(const SPoly& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SPoly& SPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SPoly SPoly::operator-() const {
  SPoly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

int product_sign(const SPoly::Parity& parity, const Monomial& a, const Monomial& b) {
  // Moving each odd factor of b left past the later odd factors of a.
  int sign = 1;
  std::size_t odd_a_after = 0;
  for (std::size_t i = parity.size(); i-- > 0;) {
    if (!parity[i]) continue;
    if (a[i] && b[i]) return 0;
    if (b[i] && (odd_a_after & 1)) sign = -sign;
    if (a[i]) ++odd_a_after;
  }
  return sign;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  a.check_same(b);
  SPoly r(a.parity_);
  const auto& par = *a.parity_;
  Monomial m(par.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      int s = product_sign(par, ma, mb);
      if (s == 0) continue;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      Rational v = ca * cb;
      if (s < 0) v = -v;
      r.add_term(m, v);
    }
  return r;
}

bool operator==(const SPoly& a, const SPoly& b) {
  return (a.parity_ == b.parity_ || *a.parity_ == *b.parity_) && a.terms_ == b.terms_;
}

SPoly SPoly::derivative(std::size_t i) const {
  if (i >= nvars()) throw UsageError("derivative index out of range");
  SPoly r(parity_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    if (odd(i)) {
      std::size_t before = 0;
      for (std::size_t j = 0; j < i; ++j)
        if (odd(j) && m[j]) ++before;
      r.add_term(d, (before & 1) ? -c : c);
    } else {
      r.add_term(d, c * m[i]);
    }
  }
  return r;
}

SPoly SPoly::right_derivative(std::size_t i) const {
  if (i >= nvars()) throw UsageError("derivative index out of range");
  SPoly r(parity_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    if (odd(i)) {
      std::size_t after = 0;
      for (std::size_t j = i + 1; j < nvars(); ++j)
        if (odd(j) && m[j]) ++after;
      r.add_term(d, (after & 1) ? -c : c);
    } else {
      r.add_term(d, c * m[i]);
    }
  }
  return r;
}

SPoly SPoly::rename(std::shared_ptr<const Parity> into, const std::vector<long>& target) const {
  if (target.size() != nvars()) throw UsageError("rename: target map has wrong length");
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] < 0) continue;
    if (static_cast<std::size_t>(target[i]) >= into->size() || (*into)[target[i]] != odd(i))
      throw UsageError("rename: target out of range or parity changed");
  }
  SPoly r(into);
  Monomial out(into->size());
  std::vector<long> odd_targets;
  for (const auto& [m, c] : terms_) {
    std::fill(out.begin(), out.end(), 0);
    odd_targets.clear();
    bool dead = false;
    for (std::size_t i = 0; i < m.size() && !dead; ++i) {
      if (m[i] == 0) continue;
      if (target[i] < 0) {
        dead = true;
        break;
      }
      out[target[i]] += m[i];
      if (odd(i)) {
        if (out[target[i]] > 1) dead = true;
        odd_targets.push_back(target[i]);
      }
    }
    if (dead) continue;
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < odd_targets.size(); ++a)
      for (std::size_t b = a + 1; b < odd_targets.size(); ++b)
        if (odd_targets[a] > odd_targets[b]) ++inversions;
    r.add_term(out, (inversions & 1) ? -c : c);
  }
  return r;
}

std::string SPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "z" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string coef = koszulq::to_string(c);
    if (!s.empty()) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    if (sgn(c) < 0) coef.erase(0, 1);
    if (mono.empty()) s += coef;
    else if (coef == "1") s += mono;
    else s += coef + "*" + mono;
  }
  return s;
}

SPoly antibracket(const SPoly& f, const SPoly& g, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  SPoly r(f.parity_ptr());
  for (const auto& [q, th] : pairs) {
    if (f.odd(q) == f.odd(th)) throw UsageError("antibracket: conjugate variables must have opposite parity");
    r += f.right_derivative(q) * g.derivative(th);
    r -= f.right_derivative(th) * g.derivative(q);
  }
  return r;
}

// ---------------------------------------------------------------------------
// SuperPolynomial

std::shared_ptr<const SPoly::Parity> SuperPolynomial::parity_for(std::size_t n, Flavor flavor) {
  // Shared per (n, flavour) so that equal algebras compare by pointer.
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const SPoly::Parity>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, static_cast<int>(flavor));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SPoly::Parity p(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = flavor == Flavor::dual;
    p[n + i] = flavor == Flavor::standard;
  }
  auto ptr = std::make_shared<const SPoly::Parity>(std::move(p));
  cache.emplace(key, ptr);
  return ptr;
}

SuperPolynomial::SuperPolynomial(std::size_t n, Flavor flavor) : n_(n), flavor_(flavor), poly_(parity_for(n, flavor)) {}

SuperPolynomial::SuperPolynomial(std::size_t n, Flavor flavor, SPoly poly)
    : n_(n), flavor_(flavor), poly_(std::move(poly)) {
  if (*poly_.parity_ptr() != *parity_for(n, flavor)) throw UsageError("SuperPolynomial: algebra mismatch");
}

SuperPolynomial SuperPolynomial::constant(std::size_t n, const Rational& c, Flavor flavor) {
  return SuperPolynomial(n, flavor, SPoly::constant(parity_for(n, flavor), c));
}

SuperPolynomial SuperPolynomial::x(std::size_t n, std::size_t i, Flavor flavor) {
  if (i < 1 || i > n) throw UsageError("x index out of range");
  return SuperPolynomial(n, flavor, SPoly::variable(parity_for(n, flavor), i - 1));
}

SuperPolynomial SuperPolynomial::xi(std::size_t n, std::size_t i, Flavor flavor) {
  if (i < 1 || i > n) throw UsageError("xi index out of range");
  return SuperPolynomial(n, flavor, SPoly::variable(parity_for(n, flavor), n + i - 1));
}

SuperPolynomial SuperPolynomial::term(std::size_t n, const Rational& coef, const std::vector<unsigned>& kappa,
                                      const std::vector<std::size_t>& xi_indices, Flavor flavor) {
  if (kappa.size() != n) throw UsageError("term: exponent vector has wrong length");
  auto par = parity_for(n, flavor);
  Monomial m(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint16_t>(kappa[i]);
  SPoly p = SPoly::monomial(par, m, coef);
  for (auto j : xi_indices) {
    if (j < 1 || j > n) throw UsageError("xi index out of range");
    p = p * SPoly::variable(par, n + j - 1);
  }
  return SuperPolynomial(n, flavor, std::move(p));
}

std::pair<unsigned, unsigned> SuperPolynomial::bidegree(const Monomial& m, std::size_t n) {
  unsigned s = 0, l = 0;
  for (std::size_t i = 0; i < n; ++i) s += m[i];
  for (std::size_t i = n; i < 2 * n; ++i) l += m[i];
  return {s, l};
}

int SuperPolynomial::lambda_degree() const {
  int k = -2;
  for (const auto& [m, c] : poly_.terms()) {
    int l = static_cast<int>(bidegree(m, n_).second);
    if (k == -2) k = l;
    else if (k != l) return -1;
  }
  return k == -2 ? 0 : k;
}

SuperPolynomial SuperPolynomial::lambda_component(unsigned k) const {
  SuperPolynomial r(n_, flavor_);
  for (const auto& [m, c] : poly_.terms())
    if (bidegree(m, n_).second == k) r.poly_.add_term(m, c);
  return r;
}

SuperPolynomial SuperPolynomial::bicomponent(unsigned s, unsigned k) const {
  SuperPolynomial r(n_, flavor_);
  for (const auto& [m, c] : poly_.terms())
    if (bidegree(m, n_) == std::make_pair(s, k)) r.poly_.add_term(m, c);
  return r;
}

namespace {

void check_compatible(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (a.n() != b.n()) throw UsageError("generator count mismatch: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  if (a.flavor() != b.flavor()) throw UsageError("mixing standard and dual polyvector fields");
}

}  // namespace

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  check_compatible(*this, o);
  poly_ += o.poly_;
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
  check_compatible(*this, o);
  poly_ -= o.poly_;
  return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c) {
  poly_ *= c;
  return *this;
}

SuperPolynomial SuperPolynomial::operator-() const { return SuperPolynomial(n_, flavor_, -poly_); }

bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
  return a.n_ == b.n_ && a.flavor_ == b.flavor_ && a.poly_ == b.poly_;
}

std::string SuperPolynomial::to_string() const {
  std::vector<std::string> names;
  const char* xs = flavor_ == Flavor::standard ? "x" : "x'";
  const char* ys = flavor_ == Flavor::standard ? "xi" : "xi'";
  for (std::size_t i = 1; i <= n_; ++i) names.push_back(xs + std::to_string(i));
  for (std::size_t i = 1; i <= n_; ++i) names.push_back(ys + std::to_string(i));
  return poly_.to_string(names);
}

SuperPolynomial wedge(const SuperPolynomial& a, const SuperPolynomial& b) {
  check_compatible(a, b);
  return SuperPolynomial(a.n(), a.flavor(), a.poly() * b.poly());
}

SuperPolynomial partial_x(std::size_t i, const SuperPolynomial& p) {
  if (i < 1 || i > p.n()) throw UsageError("partial_x index out of range");
  return SuperPolynomial(p.n(), p.flavor(), p.poly().derivative(i - 1));
}

SuperPolynomial partial_xi(std::size_t i, const SuperPolynomial& p) {
  if (i < 1 || i > p.n()) throw UsageError("partial_xi index out of range");
  return SuperPolynomial(p.n(), p.flavor(), p.poly().derivative(p.n() + i - 1));
}

namespace {

SuperPolynomial dot(const SuperPolynomial& a, const SuperPolynomial& b) {
  SuperPolynomial r(a.n(), a.flavor());
  for (std::size_t i = 0; i < a.n(); ++i)
    r += SuperPolynomial(a.n(), a.flavor(), a.poly().right_derivative(a.n() + i) * b.poly().derivative(i));
  return r;
}

}  // namespace

SuperPolynomial schouten(const SuperPolynomial& a, const SuperPolynomial& b) {
  check_compatible(a, b);
  if (a.flavor() == SuperPolynomial::Flavor::dual) {
    // Coordinates x'_i (odd) conjugate to momenta xi'_i (even). The overall
    // sign is the one making the unsigned duality map a bracket morphism.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < a.n(); ++i) pairs.emplace_back(i, a.n() + i);
    return SuperPolynomial(a.n(), a.flavor(), antibracket(a.poly(), b.poly(), pairs));
  }
  SuperPolynomial r(a.n(), a.flavor());
  const std::size_t top = a.n();
  for (unsigned ka = 0; ka <= top; ++ka) {
    auto ac = a.lambda_component(ka);
    if (ac.is_zero()) continue;
    for (unsigned kb = 0; kb <= top; ++kb) {
      auto bc = b.lambda_component(kb);
      if (bc.is_zero()) continue;
      r += dot(ac, bc);
      // (ka-1)(kb-1) is odd exactly when both degrees are even.
      if (ka % 2 == 0 && kb % 2 == 0) r += dot(bc, ac);
      else r -= dot(bc, ac);
    }
  }
  return r;
}

int duality_sign(unsigned /*k*/, unsigned /*l*/) { return 1; }

SuperPolynomial duality_map(const SuperPolynomial& p) {
  using F = SuperPolynomial::Flavor;
  const std::size_t n = p.n();
  F target = p.flavor() == F::standard ? F::dual : F::standard;
  SPoly out(SuperPolynomial::parity_for(n, target));
  for (const auto& [m, c] : p.poly().terms()) {
    auto [k, l] = SuperPolynomial::bidegree(m, n);
    Monomial swapped(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      swapped[i] = m[n + i];
      swapped[n + i] = m[i];
    }
    out.add_term(swapped, duality_sign(k, l) > 0 ? c : -c);
  }
  return SuperPolynomial(n, target, std::move(out));
}

bool is_poisson(const SuperPolynomial& b) { return schouten(b, b).is_zero(); }

bool is_quadratic_bivector(const SuperPolynomial& b) {
  for (const auto& [m, c] : b.poly().terms())
    if (SuperPolynomial::bidegree(m, b.n()) != std::make_pair(2u, 2u)) return false;
  return true;
}

SuperPolynomial contract(const SuperPolynomial& gamma, const std::vector<SuperPolynomial>& fs) {
  if (gamma.is_zero()) return gamma;
  const int k = gamma.lambda_degree();
  if (k < 0) throw UsageError("contract: polyvector field is not homogeneous in Lambda-degree");
  if (static_cast<std::size_t>(k) != fs.size())
    throw UsageError("contract: expected " + std::to_string(k) + " arguments, got " + std::to_string(fs.size()));
  for (const auto& f : fs) {
    check_compatible(gamma, f);
    if (f.lambda_degree() != 0) throw UsageError("contract: arguments must be functions");
  }
  // Recursive over the argument slots: peel d/dxi_{i_j} and pair with d f_j / dx_{i_j}.
  SuperPolynomial total(gamma.n(), gamma.flavor());
  std::vector<SuperPolynomial> stack{gamma};
  std::vector<SuperPolynomial> factor{SuperPolynomial::constant(gamma.n(), 1, gamma.flavor())};
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == fs.size()) {
      total += wedge(stack.back(), factor.back());
      return;
    }
    for (std::size_t i = 1; i <= gamma.n(); ++i) {
      auto g = partial_xi(i, stack.back());
      if (g.is_zero()) continue;
      auto df = partial_x(i, fs[slot]);
      if (df.is_zero()) continue;
      stack.push_back(std::move(g));
      factor.push_back(wedge(factor.back(), df));
      self(self, slot + 1);
      stack.pop_back();
      factor.pop_back();
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace koszulq
