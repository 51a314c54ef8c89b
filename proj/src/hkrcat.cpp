#include "koszulq/hkrcat.hpp"

#include <algorithm>
#include <functional>

#include "koszulq/errors.hpp"
#include "koszulq/hochschild.hpp"
#include "json.hpp"

namespace koszulq {

namespace {

using CatPtr = std::shared_ptr<const GradedCategory>;

Rational factorial(std::size_t k) {
  Rational f(1);
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long>(i);
  return f;
}

// Coefficient of the sorted monomial xi_L (L given by the xi slots of m) in lambda.
Rational lambda_coefficient(const SuperPolynomial& lambda, const Monomial& m) {
  auto it = lambda.poly().terms().find(m);
  return it == lambda.poly().terms().end() ? Rational(0) : it->second;
}

// k(lambda) for a K-element k and an exterior element lambda.
SuperPolynomial pair(const SuperPolynomial& k, const SuperPolynomial& lambda) {
  const std::size_t n = k.n();
  SuperPolynomial out(n);
  for (const auto& [m, c] : k.poly().terms()) {
    Monomial xi(m), x(m);
    for (std::size_t i = 0; i < n; ++i) xi[i] = 0;
    for (std::size_t i = n; i < 2 * n; ++i) x[i] = 0;
    Rational v = lambda_coefficient(lambda, xi);
    if (v == 0) continue;
    out += SuperPolynomial(n, SuperPolynomial::Flavor::standard,
                           SPoly::monomial(SuperPolynomial::parity_for(n, SuperPolynomial::Flavor::standard), x, c * v));
  }
  return out;
}

// sum_M value(xi_M) (xi_M)^* as a K-element.
SuperPolynomial k_element(std::size_t n, const std::function<SuperPolynomial(const SuperPolynomial&)>& value) {
  SuperPolynomial out(n);
  auto par = SuperPolynomial::parity_for(n, SuperPolynomial::Flavor::standard);
  for (std::size_t l = 0; l <= n; ++l) {
    for (const auto& M : subsets(n, l)) {
      auto xiM = SuperPolynomial::term(n, Rational(1), std::vector<unsigned>(n, 0), M);
      auto v = value(xiM);
      for (const auto& [m, c] : v.poly().terms()) {
        Monomial mm(m);
        for (std::size_t i : M) mm[n + i - 1] = 1;
        out += SuperPolynomial(n, SuperPolynomial::Flavor::standard, SPoly::monomial(par, mm, c));
      }
    }
  }
  return out;
}

// Calls fn on every index tuple in {1..n}^len.
void for_tuples(std::size_t n, std::size_t len, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t(len, 1);
  if (n == 0) {
    if (len == 0) fn(t);
    return;
  }
  while (true) {
    fn(t);
    std::size_t p = len;
    while (p > 0 && t[p - 1] == n) t[--p] = 1;
    if (p == 0) return;
    ++t[p - 1];
  }
}

void check_bihomogeneous(const SuperPolynomial& gamma, const char* who) {
  if (gamma.flavor() != SuperPolynomial::Flavor::standard)
    throw UsageError(std::string(who) + ": gamma must be a standard polyvector field");
  if (gamma.is_zero()) return;
  auto first = SuperPolynomial::bidegree(gamma.poly().terms().begin()->first, gamma.n());
  for (const auto& [m, c] : gamma.poly().terms())
    if (SuperPolynomial::bidegree(m, gamma.n()) != first)
      throw UsageError(std::string(who) + ": gamma is not bi-homogeneous");
}

std::pair<unsigned, unsigned> bidegree_of(const SuperPolynomial& gamma) {
  if (gamma.is_zero()) return {0, 0};
  return SuperPolynomial::bidegree(gamma.poly().terms().begin()->first, gamma.n());
}

// (-1)^{l (m2 + [Finf]) + (sum of deg lambda_i)(deg_Lambda gamma + [G])}, l the Lambda-degree of k,
// times (-1)^{m1} on F^0 and (-1)^{m1 + m2} on F^inf.
int koszul_sign(FgKind kind, const std::vector<SuperPolynomial>& lambdas, const SuperPolynomial& k, std::size_t m2,
                unsigned dL) {
  auto deg = [](const SuperPolynomial& p) { return p.is_zero() ? 0 : p.lambda_degree(); };
  long e = static_cast<long>(deg(k)) * static_cast<long>(m2 + (kind == FgKind::Finf ? 1 : 0));
  if (kind == FgKind::F0) e += static_cast<long>(lambdas.size());
  if (kind == FgKind::Finf) e += static_cast<long>(lambdas.size() + m2);
  long sp = 0;
  for (const auto& l : lambdas) sp += deg(l);
  e += sp * static_cast<long>(dL + (kind == FgKind::G ? 1 : 0));
  return e % 2 ? -1 : 1;
}

SuperPolynomial one(std::size_t n) { return SuperPolynomial::constant(n, Rational(1)); }

// Splits a monomial term c x^kappa xi_L into (c x^kappa, xi_L).
std::pair<SuperPolynomial, SuperPolynomial> split_term(std::size_t n, const Monomial& m, const Rational& c) {
  auto par = SuperPolynomial::parity_for(n, SuperPolynomial::Flavor::standard);
  Monomial x(m), xi(m);
  for (std::size_t i = 0; i < n; ++i) xi[i] = 0;
  for (std::size_t i = n; i < 2 * n; ++i) x[i] = 0;
  return {SuperPolynomial(n, SuperPolynomial::Flavor::standard, SPoly::monomial(par, x, c)),
          SuperPolynomial(n, SuperPolynomial::Flavor::standard, SPoly::monomial(par, xi, Rational(1)))};
}

// Locates a K-element in the K blocks.
std::map<int, SparseVec> locate_K(const GradedCategory& cat, const SuperPolynomial& p) {
  std::map<int, SparseVec> parts;
  for (const auto& [m, c] : p.poly().terms()) {
    bool found = false;
    for (std::size_t b = 0; b < cat.blocks.size() && !found; ++b) {
      if (cat.blocks[b].kind != 'K') continue;
      auto it = cat.blocks[b].index.find(m);
      if (it == cat.blocks[b].index.end()) continue;
      parts[static_cast<int>(b)].emplace_back(it->second, c);
      found = true;
    }
    if (!found) throw CutoffError("F/G cochain: value beyond the materialized K blocks");
  }
  for (auto& [b, v] : parts)
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return parts;
}

// Cochain on sources (B^m1, K, A^m2) -> K from a function of basis arguments.
KellerCochain mixed_cochain(const CatPtr& cat, std::size_t m1, std::size_t m2, long cutoff,
                            const std::function<SuperPolynomial(const std::vector<SuperPolynomial>&,
                                                                const SuperPolynomial&,
                                                                const std::vector<SuperPolynomial>&)>& fn) {
  KellerCochain out(cat, cutoff);
  const std::size_t arity = m1 + 1 + m2;
  for (const auto& src : source_sequences(*cat, arity, cutoff)) {
    bool ok = true;
    for (std::size_t s = 0; s < arity; ++s) {
      char want = s < m1 ? 'B' : (s == m1 ? 'K' : 'A');
      ok = ok && cat->blocks[src[s]].kind == want;
    }
    if (!ok) continue;
    std::size_t cols = source_dim(*cat, src);
    std::vector<SuperPolynomial> args(arity);
    for (std::size_t col = 0; col < cols; ++col) {
      std::size_t c = col;
      for (std::size_t s = arity; s-- > 0;) {
        std::size_t d = cat->blocks[src[s]].dim();
        args[s] = cat->basis_element(src[s], c % d);
        c /= d;
      }
      std::vector<SuperPolynomial> lambdas(args.begin(), args.begin() + static_cast<long>(m1));
      std::vector<SuperPolynomial> fs(args.begin() + static_cast<long>(m1) + 1, args.end());
      for (auto& [b, v] : locate_K(*cat, fn(lambdas, args[m1], fs))) out.add_column({src, b}, col, v);
    }
  }
  return out;
}

FgCochain build(FgKind kind, const CatPtr& keller, const SuperPolynomial& gamma, std::size_t m1,
                std::size_t m2, long cutoff) {
  check_keller(*keller);
  const char* who = kind == FgKind::G ? "build_G" : (kind == FgKind::F0 ? "build_F0" : "build_Finf");
  if (gamma.n() != keller->n) throw UsageError(std::string(who) + ": dimension mismatch");
  check_bihomogeneous(gamma, who);
  auto [dS, dL] = bidegree_of(gamma);
  std::size_t needS = m1 + (kind == FgKind::Finf ? 1 : 0);
  std::size_t needL = m2 + (kind == FgKind::F0 ? 1 : 0);
  if (!gamma.is_zero() && needS > dS)
    throw UsageError(std::string(who) + ": m1" + (kind == FgKind::Finf ? " + 1" : "") + " exceeds deg_S(gamma)");
  if (!gamma.is_zero() && needL > dL)
    throw UsageError(std::string(who) + ": m2" + (kind == FgKind::F0 ? " + 1" : "") +
                     " exceeds deg_Lambda(gamma)");
  FgCochain out{kind, m1, m2, gamma, fg_prefactor(kind, m1, m2), KellerCochain(keller, cutoff)};
  Rational pre = out.prefactor;
  out.realized = mixed_cochain(keller, m1, m2, cutoff,
                               [&](const std::vector<SuperPolynomial>& ls, const SuperPolynomial& k,
                                   const std::vector<SuperPolynomial>& fs) {
                                 return fg_cochain_value(kind, gamma, ls, k, fs) * pre;
                               });
  return out;
}

Cochain part_of_D(const Cochain& c, const Cochain& mu) {
  Cochain out(c.category_ptr(), c.cutoff());
  bool first = true;
  for (auto& [deg, piece] : split_by_degree(c)) {
    Cochain d = brace(mu, {piece});
    Cochain r = brace(piece, {mu});
    if (deg % 2 == 0) d -= r;
    else d += r;
    if (first) {
      out = d;
      first = false;
    } else {
      out += d;
    }
  }
  if (first) out.set_cutoff(c.cutoff());
  return out;
}

}  // namespace

std::string kind_name(FgKind k) {
  switch (k) {
    case FgKind::G: return "G";
    case FgKind::F0: return "F0";
    case FgKind::Finf: return "Finf";
  }
  return "?";
}

Rational fg_prefactor(FgKind, std::size_t, std::size_t) { return Rational(1); }

Rational displayed_prefactor(FgKind kind, std::size_t m1, std::size_t m2) {
  switch (kind) {
    case FgKind::G: return 1 / (factorial(m1) * factorial(m2));
    case FgKind::F0: return 1 / (factorial(m1) * factorial(m2 + 1));
    case FgKind::Finf: return 1 / (factorial(m1 + 1) * factorial(m2));
  }
  return Rational(0);
}

SuperPolynomial fg_cochain_value(FgKind kind, const SuperPolynomial& gamma,
                                 const std::vector<SuperPolynomial>& lambdas, const SuperPolynomial& k,
                                 const std::vector<SuperPolynomial>& fs) {
  const std::size_t n = gamma.n();
  const std::size_t m1 = lambdas.size(), m2 = fs.size();
  const unsigned dL = bidegree_of(gamma).second;
  SuperPolynomial total(n);
  for (const auto& [gm, gc] : gamma.poly().terms()) {
    auto [gS, gL] = split_term(n, gm, gc);
    for_tuples(n, m1, [&](const std::vector<std::size_t>& is) {
      // d/dxi_{i_1}(l_1) ^ .. ^ d/dxi_{i_m1}(l_m1) and d/dx_{i_1}..d/dx_{i_m1} gamma^S
      SuperPolynomial T = one(n), PS = gS;
      for (std::size_t t = 0; t < m1; ++t) {
        T = wedge(T, partial_xi(is[t], lambdas[t]));
        PS = partial_x(is[t], PS);
        if (T.is_zero() || PS.is_zero()) return;
      }
      for_tuples(n, m2, [&](const std::vector<std::size_t>& js) {
        SuperPolynomial GL = gL, PF = one(n);
        for (std::size_t t = m2; t-- > 0;) {
          GL = partial_xi(js[t], GL);
          if (GL.is_zero()) return;
        }
        for (std::size_t t = 0; t < m2; ++t) {
          PF = wedge(PF, partial_x(js[t], fs[t]));
          if (PF.is_zero()) return;
        }
        const Rational sg(koszul_sign(kind, lambdas, k, fs.size(), dL));
        switch (kind) {
          case FgKind::G: {
            auto TT = wedge(T, GL);
            auto P = wedge(PS, PF);
            total += k_element(n, [&](const SuperPolynomial& lam) { return wedge(pair(k, wedge(lam, TT)), P) * sg; });
            break;
          }
          case FgKind::F0: {
            auto P = wedge(PS, PF);
            for (std::size_t a = 1; a <= n; ++a) {
              auto ka = partial_x(a, k);
              auto GLa = partial_xi(a, GL);
              if (ka.is_zero() || GLa.is_zero()) continue;
              auto TT = wedge(T, GLa);
              total += k_element(n, [&](const SuperPolynomial& lam) { return wedge(pair(ka, wedge(lam, TT)), P) * sg; });
            }
            break;
          }
          case FgKind::Finf: {
            auto TT = wedge(T, GL);
            for (std::size_t b = 1; b <= n; ++b) {
              auto PSb = partial_x(b, PS);
              if (PSb.is_zero()) continue;
              auto P = wedge(PSb, PF);
              total += k_element(
                  n, [&](const SuperPolynomial& lam) { return wedge(pair(k, partial_xi(b, wedge(lam, TT))), P) * sg;
              });
            }
            break;
          }
        }
      });
    });
  }
  return total;
}

FgCochain build_G(const CatPtr& keller, const SuperPolynomial& gamma, std::size_t m1, std::size_t m2,
                  long cutoff) {
  return build(FgKind::G, keller, gamma, m1, m2, cutoff);
}
FgCochain build_F0(const CatPtr& keller, const SuperPolynomial& gamma, std::size_t m1, std::size_t m2,
                   long cutoff) {
  return build(FgKind::F0, keller, gamma, m1, m2, cutoff);
}
FgCochain build_Finf(const CatPtr& keller, const SuperPolynomial& gamma, std::size_t m1, std::size_t m2,
                     long cutoff) {
  return build(FgKind::Finf, keller, gamma, m1, m2, cutoff);
}

KellerCochain hoch_part(const KellerCochain& c) { return part_of_D(c, structure_m2(c.category_ptr())); }
KellerCochain koszul_part(const KellerCochain& c) { return part_of_D(c, structure_m1(c.category_ptr())); }

KellerCochain phi_tilde_S(const CatPtr& keller, const SuperPolynomial& gamma, long cutoff) {
  check_bihomogeneous(gamma, "phi_tilde_S");
  auto [dS, dL] = bidegree_of(gamma);
  (void)dS;
  return polynomial_cochain(keller, 'A', dL, cutoff,
                            [&](const std::vector<SuperPolynomial>& fs) { return contract(gamma, fs); });
}

KellerCochain phi_tilde_Lambda(const CatPtr& keller, const SuperPolynomial& gamma, long cutoff) {
  check_bihomogeneous(gamma, "phi_tilde_Lambda");
  const std::size_t n = gamma.n();
  auto [dS, dL] = bidegree_of(gamma);
  (void)dL;
  return polynomial_cochain(keller, 'B', dS, cutoff, [&](const std::vector<SuperPolynomial>& ls) {
    SuperPolynomial total(n);
    for (const auto& [gm, gc] : gamma.poly().terms()) {
      auto [gS, gL] = split_term(n, gm, gc);
      for_tuples(n, dS, [&](const std::vector<std::size_t>& is) {
        SuperPolynomial T = one(n), PS = gS;
        for (std::size_t t = 0; t < dS; ++t) {
          T = wedge(T, partial_xi(is[t], ls[t]));
          PS = partial_x(is[t], PS);
          if (T.is_zero() || PS.is_zero()) return;
        }
        total += wedge(gL, wedge(PS, T));
      });
    }
    return total;
  });
}

std::optional<Rational> proportionality(const Cochain& a, const Cochain& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [key, comp] = *b.components().begin();
  const auto& [col, vec] = *comp.cols.begin();
  const auto& [row, val] = vec.front();
  Rational av(0);
  auto it = a.components().find(key);
  if (it != a.components().end()) {
    auto jt = it->second.cols.find(col);
    if (jt != it->second.cols.end())
      for (const auto& [r, v] : jt->second)
        if (r == row) av = v;
  }
  Rational c = av / val;
  if (a == b * c) return c;
  return std::nullopt;
}

namespace {

std::string poly_string(const SuperPolynomial& p) { return p.to_string(); }

long auto_weight(long cutoff, unsigned dS, unsigned dL) { return cutoff + static_cast<long>(dS + dL) + 2; }

nlohmann::json opt_json(const std::optional<Rational>& r) {
  return r ? nlohmann::json(to_string(*r)) : nlohmann::json(nullptr);
}

// Coefficients of the S-side chain phi~^S + sum_k c_k F^0_{0,k} and the
// resulting coefficient of G_{0,0}; `dim` stands for dim V.
struct Chain {
  std::map<std::size_t, Rational> coef;  // arity index k -> c_k
  Rational kappa;
};

// Generic telescope: top = sign of d phi~ against G at the top index, e_up the
// sign of the arity-raising identity, e_diff the sign of the Koszul identity
// whose scalar at index k is (deg - k) * dim.
Chain telescope(unsigned deg, int top, int e_up, int e_diff, const Rational& dim) {
  Chain ch;
  if (deg == 0) {
    ch.kappa = top;
    return ch;
  }
  Rational c = -Rational(top * e_up);
  ch.coef[deg - 1] = c;
  for (std::size_t k = deg - 1; k >= 1; --k) {
    c = -c * e_diff * e_up * static_cast<long>(deg - k) * dim;
    ch.coef[k - 1] = c;
  }
  ch.kappa = ch.coef[0] * e_diff * static_cast<long>(deg) * dim;
  return ch;
}

Chain s_chain(const SignTable& t, unsigned dS, unsigned dL, const Rational& dim) {
  return telescope(dL, t.get("phiS", dS, dL), dL ? t.get("i", dS, dL) : 1, dL ? t.get("ii", dS, dL) : 1, dim);
}
Chain l_chain(const SignTable& t, unsigned dS, unsigned dL, const Rational& dim) {
  return telescope(dS, t.get("phiL", dS, dL), dS ? t.get("iii", dS, dL) : 1, dS ? t.get("iv", dS, dL) : 1, dim);
}

KellerCochain s_chain_cochain(const CatPtr& cat, const SuperPolynomial& g, const Chain& ch, long cutoff) {
  auto out = phi_tilde_S(cat, g, cutoff);
  for (const auto& [k, c] : ch.coef) out += build_F0(cat, g, 0, k, cutoff).realized * c;
  return out;
}
KellerCochain l_chain_cochain(const CatPtr& cat, const SuperPolynomial& g, const Chain& ch, long cutoff) {
  auto out = phi_tilde_Lambda(cat, g, cutoff);
  for (const auto& [k, c] : ch.coef) out += build_Finf(cat, g, k, 0, cutoff).realized * c;
  return out;
}

// Observed multiple of G (0 when lhs vanishes and G does not).
std::optional<Rational> multiple_of(const Cochain& lhs, const Cochain& G) {
  if (lhs.is_zero()) return G.is_zero() ? std::nullopt : std::optional<Rational>(Rational(0));
  return proportionality(lhs, G);
}

}  // namespace

std::string FgIdentityResult::to_json() const {
  nlohmann::json j;
  j["identity"] = which;
  j["n"] = n;
  j["bidegree"] = {degS, degL};
  j["gamma"] = gamma;
  j["arities"] = {m, n_arity};
  j["stated_scalar"] = to_string(scalar);
  j["observed_scalar"] = opt_json(observed);
  j["sign"] = sign;
  j["pass"] = pass;
  return j.dump(2);
}

FgIdentityResult verify_fg_identity(const SuperPolynomial& gamma, std::size_t m, std::size_t n_arity,
                                    const std::string& which, long cutoff) {
  check_bihomogeneous(gamma, "verify_fg_identity");
  if (which != "i" && which != "ii" && which != "iii" && which != "iv")
    throw UsageError("verify_fg_identity: identity must be i, ii, iii or iv");
  auto [dS, dL] = bidegree_of(gamma);
  const bool zero_side = which == "i" || which == "ii";
  if (zero_side && (m > dS || n_arity + 1 > dL))
    throw UsageError("verify_fg_identity: (" + which + ") needs m <= deg_S and n + 1 <= deg_Lambda");
  if (!zero_side && (m + 1 > dS || n_arity > dL))
    throw UsageError("verify_fg_identity: (" + which + ") needs m + 1 <= deg_S and n <= deg_Lambda");
  const std::size_t n = gamma.n();
  auto cat = keller_category(n, auto_weight(cutoff, dS, dL), KoszulNormalization::plain);
  FgIdentityResult r;
  r.which = which;
  r.n = n;
  r.degS = dS;
  r.degL = dL;
  r.gamma = poly_string(gamma);
  r.m = m;
  r.n_arity = n_arity;
  KellerCochain lhs(cat, cutoff), G(cat, cutoff);
  const long dim = static_cast<long>(n);
  if (which == "i") {
    lhs = hoch_part(build_F0(cat, gamma, m, n_arity, cutoff).realized);
    G = build_G(cat, gamma, m, n_arity + 1, cutoff).realized;
    r.scalar = 1;
  } else if (which == "ii") {
    lhs = koszul_part(build_F0(cat, gamma, m, n_arity, cutoff).realized);
    G = build_G(cat, gamma, m, n_arity, cutoff).realized;
    r.scalar = Rational(dim * (static_cast<long>(dL) - static_cast<long>(n_arity)));
  } else if (which == "iii") {
    lhs = hoch_part(build_Finf(cat, gamma, m, n_arity, cutoff).realized);
    G = build_G(cat, gamma, m + 1, n_arity, cutoff).realized;
    r.scalar = 1;
  } else {
    lhs = koszul_part(build_Finf(cat, gamma, m, n_arity, cutoff).realized);
    G = build_G(cat, gamma, m, n_arity, cutoff).realized;
    r.scalar = Rational(dim * (static_cast<long>(dS) - static_cast<long>(m)));
  }
  r.observed = multiple_of(lhs, G);
  if (lhs == G * r.scalar) r.sign = 1;
  else if (lhs == G * (-r.scalar)) r.sign = -1;
  r.pass = r.sign != 0;
  return r;
}

std::string SignTable::key(const std::string& which, unsigned degS, unsigned degL) {
  if (which == "phiS" || which == "phiL") return which + ":" + std::to_string(degS) + ":" + std::to_string(degL);
  return which + ":" + std::to_string(degS % 2) + ":" + std::to_string(degL % 2);
}

int SignTable::get(const std::string& which, unsigned degS, unsigned degL) const {
  auto it = entries.find(key(which, degS, degL));
  if (it == entries.end()) throw UsageError("sign table: no entry " + key(which, degS, degL));
  return it->second;
}

std::string SignTable::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : entries) j[k] = v;
  return j.dump(2);
}

SignTable SignTable::from_json(const std::string& text) {
  SignTable t;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("sign table: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("sign table: expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
      throw UsageError("sign table: entry " + k + " must be 1 or -1");
    t.entries[k] = v.get<int>();
  }
  return t;
}

std::string SignTableReport::to_json() const {
  nlohmann::json j;
  j["table"] = nlohmann::json::parse(table.to_json());
  j["consistent"] = consistent;
  j["pass"] = pass;
  j["results"] = nlohmann::json::array();
  for (const auto& r : results) j["results"].push_back(nlohmann::json::parse(r.to_json()));
  return j.dump(2);
}

SuperPolynomial grid_gamma(std::size_t n, unsigned degS, unsigned degL) {
  SuperPolynomial g(n);
  long c = 1;
  for (const auto& e : exponent_vectors(n, degS))
    for (const auto& L : subsets(n, degL)) g += SuperPolynomial::term(n, Rational(c++), e, L);
  return g;
}

SignTableReport resolve_sign_table(std::size_t max_n, unsigned max_deg, std::size_t max_arity, long cutoff) {
  SignTableReport rep;
  rep.consistent = true;
  bool all = true;
  auto record = [&](const std::string& k, int s) {
    auto [it, fresh] = rep.table.entries.emplace(k, s);
    if (!fresh && it->second != s) rep.consistent = false;
  };
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (unsigned dS = 0; dS <= max_deg; ++dS) {
      for (unsigned dL = 0; dL <= std::min<unsigned>(max_deg, static_cast<unsigned>(n)); ++dL) {
        auto g = grid_gamma(n, dS, dL);
        auto cat = keller_category(n, auto_weight(cutoff, dS, dL), KoszulNormalization::plain);
        for (const char* which : {"phiS", "phiL"}) {
          bool S = std::string(which) == "phiS";
          auto lhs = total_differential(S ? phi_tilde_S(cat, g, cutoff) : phi_tilde_Lambda(cat, g, cutoff));
          auto G = S ? build_G(cat, g, 0, dL, cutoff).realized : build_G(cat, g, dS, 0, cutoff).realized;
          if (lhs == G) record(SignTable::key(which, dS, dL), 1);
          else if (lhs == G * Rational(-1)) record(SignTable::key(which, dS, dL), -1);
          else all = false;
        }
        for (std::size_t m1 = 0; m1 <= max_arity; ++m1) {
          for (std::size_t m2 = 0; m2 <= max_arity; ++m2) {
            std::vector<std::string> ids;
            if (m1 <= dS && m2 + 1 <= dL) ids = {"i", "ii"};
            if (m1 + 1 <= dS && m2 <= dL) ids.insert(ids.end(), {"iii", "iv"});
            for (const auto& w : ids) {
              auto r = verify_fg_identity(g, m1, m2, w, cutoff);
              if (!r.pass) all = false;
              if (r.observed && *r.observed != 0) record(SignTable::key(w, dS, dL), sgn(*r.observed));
              rep.results.push_back(std::move(r));
            }
          }
        }
      }
    }
  }
  rep.pass = rep.consistent && all;
  return rep;
}

const SignTable& default_sign_table() {
  static const SignTable t = [] {
    SignTable s;
    for (unsigned a = 0; a < 2; ++a) {
      for (unsigned b = 0; b < 2; ++b) {
        s.entries[SignTable::key("i", a, b)] = b ? -1 : 1;
        s.entries[SignTable::key("ii", a, b)] = 1;
        s.entries[SignTable::key("iii", a, b)] = 1;
        s.entries[SignTable::key("iv", a, b)] = b ? 1 : -1;
      }
    }
    for (unsigned dS = 0; dS <= 2; ++dS) {
      for (unsigned dL = 0; dL <= 2; ++dL) {
        s.entries[SignTable::key("phiS", dS, dL)] = dL == 0 ? -1 : 1;
        s.entries[SignTable::key("phiL", dS, dL)] = (dS % 2 == 1 || dL % 2 == 1) ? -1 : 1;
      }
    }
    return s;
  }();
  return t;
}

std::string TelescopeReport::to_json() const {
  nlohmann::json j;
  j["gamma"] = gamma;
  j["n"] = n;
  j["bidegree"] = {degS, degL};
  j["unit_dimension"] = unit_dimension;
  j["S"] = {{"expected", to_string(expected_S)}, {"observed", opt_json(observed_S)}, {"pass", pass_S}};
  j["Lambda"] = {{"expected", to_string(expected_Lambda)}, {"observed", opt_json(observed_Lambda)}, {"pass", pass_Lambda}};
  j["pass"] = pass;
  return j.dump(2);
}

TelescopeReport telescope_check(const SuperPolynomial& gamma, const SignTable& signs, bool unit_dimension, long cutoff) {
  check_bihomogeneous(gamma, "telescope_check");
  auto [dS, dL] = bidegree_of(gamma);
  const std::size_t n = gamma.n();
  auto cat = keller_category(n, auto_weight(cutoff, dS, dL), KoszulNormalization::plain);
  Rational dim(unit_dimension ? 1 : static_cast<long>(n));
  TelescopeReport r;
  r.gamma = poly_string(gamma);
  r.n = n;
  r.degS = dS;
  r.degL = dL;
  r.unit_dimension = unit_dimension;
  auto G = build_G(cat, gamma, 0, 0, cutoff).realized;
  auto sc = s_chain(signs, dS, dL, dim);
  auto lc = l_chain(signs, dS, dL, dim);
  r.expected_S = sc.kappa;
  r.expected_Lambda = lc.kappa;
  auto dSc = total_differential(s_chain_cochain(cat, gamma, sc, cutoff));
  auto dLc = total_differential(l_chain_cochain(cat, gamma, lc, cutoff));
  r.observed_S = multiple_of(dSc, G);
  r.observed_Lambda = multiple_of(dLc, G);
  r.pass_S = dSc == G * sc.kappa;
  r.pass_Lambda = dLc == G * lc.kappa;
  r.pass = r.pass_S && r.pass_Lambda;
  return r;
}

KellerCochain phi_cat(const SuperPolynomial& gamma, long cutoff, const SignTable& signs, KoszulNormalization norm) {
  check_bihomogeneous(gamma, "phi_cat");
  auto [dS, dL] = bidegree_of(gamma);
  return phi_cat(keller_category(gamma.n(), auto_weight(cutoff, dS, dL), norm), gamma, cutoff, signs);
}

KellerCochain phi_cat(const CatPtr& cat, const SuperPolynomial& gamma, long cutoff, const SignTable& signs) {
  check_keller(*cat);
  check_bihomogeneous(gamma, "phi_cat");
  if (gamma.n() != cat->n) throw UsageError("phi_cat: dimension mismatch");
  auto [dS, dL] = bidegree_of(gamma);
  auto sc = s_chain(signs, dS, dL, Rational(1));
  auto lc = l_chain(signs, dS, dL, Rational(1));
  // kappa = +-n! and +-m!, so both halves have differential G_{0,0}.
  return s_chain_cochain(cat, gamma, sc, cutoff) * (1 / sc.kappa) -
         l_chain_cochain(cat, gamma, lc, cutoff) * (1 / lc.kappa);
}

std::string PhiCatReport::to_json() const {
  nlohmann::json j;
  j["gamma"] = gamma;
  j["normalization"] = norm == KoszulNormalization::plain ? "plain" : "normalized";
  j["closed"] = closed;
  j["p_A"] = {{"coefficient", opt_json(coef_A)}, {"pass", pass_A}};
  j["p_B"] = {{"coefficient", opt_json(coef_B)}, {"pass", pass_B}};
  j["pass"] = pass;
  return j.dump(2);
}

PhiCatReport phi_cat_check(const SuperPolynomial& gamma, long cutoff, const SignTable& signs, KoszulNormalization norm) {
  auto phi = phi_cat(gamma, cutoff, signs, norm);
  auto [dS, dL] = bidegree_of(gamma);
  const std::size_t n = gamma.n();
  PhiCatReport r;
  r.gamma = poly_string(gamma);
  r.norm = norm;
  r.closed = total_differential(phi).is_zero();
  auto sym = symmetric_category(n, phi.category().max_weight);
  auto ext = exterior_category(n);
  auto pa = project_A(phi, sym);
  auto hk = hkr(sym, gamma, cutoff);
  r.coef_A = multiple_of(pa, hk);
  auto pb = project_B(phi, ext);
  auto tl = project_B(phi_tilde_Lambda(phi.category_ptr(), gamma, cutoff), ext) * (1 / factorial(dS));
  r.coef_B = multiple_of(pb, tl);
  r.pass_A = r.coef_A && abs(*r.coef_A) == 1;
  r.pass_B = r.coef_B && abs(*r.coef_B) == 1;
  r.pass = r.closed && r.pass_A && r.pass_B;
  return r;
}

}  // namespace koszulq
