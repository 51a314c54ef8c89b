#include "koszulq/category.hpp"

#include <algorithm>

#include "koszulq/errors.hpp"

namespace koszulq {

namespace {

SuperPolynomial from_monomial(std::size_t n, const Monomial& m, const Rational& c) {
  auto par = SuperPolynomial::parity_for(n, SuperPolynomial::Flavor::standard);
  return SuperPolynomial(n, SuperPolynomial::Flavor::standard, SPoly::monomial(par, m, c));
}

Monomial make_monomial(std::size_t n, const std::vector<unsigned>& kappa, const std::vector<std::size_t>& L) {
  Monomial m(2 * n, 0);
  for (std::size_t i = 0; i < kappa.size(); ++i) m[i] = static_cast<std::uint16_t>(kappa[i]);
  for (std::size_t i : L) m[n + i - 1] = 1;
  return m;
}

Block make_block(std::string name, char kind, int src, int tgt, int inner, int coh, long weight, bool unit) {
  Block b;
  b.name = std::move(name);
  b.kind = kind;
  b.src = src;
  b.tgt = tgt;
  b.inner = inner;
  b.coh = coh;
  b.weight = weight;
  b.unit = unit;
  return b;
}

void push(Block& b, Monomial m) {
  b.index.emplace(m, b.basis.size());
  b.basis.push_back(std::move(m));
}

Monomial xi_part(const Monomial& m, std::size_t n) {
  Monomial r(m);
  for (std::size_t i = 0; i < n; ++i) r[i] = 0;
  return r;
}

bool is_const(const Monomial& m) {
  for (auto e : m)
    if (e) return false;
  return true;
}

// beta . k for beta = xi_P, k = x^kappa eta_L: k(lambda ^ xi_P).
SuperPolynomial contract_action(std::size_t n, const Monomial& beta, const Monomial& k) {
  auto par = SuperPolynomial::parity_for(n, SuperPolynomial::Flavor::standard);
  Monomial rest(k);
  for (std::size_t i = n; i < 2 * n; ++i) {
    if (beta[i] && !k[i]) return SuperPolynomial(n);
    if (beta[i]) rest[i] = 0;
  }
  int s = product_sign(*par, xi_part(rest, n), beta);
  return from_monomial(n, rest, Rational(s));
}

SuperPolynomial multiply(std::size_t n, const Monomial& a, const Monomial& b) {
  auto par = SuperPolynomial::parity_for(n, SuperPolynomial::Flavor::standard);
  int s = product_sign(*par, a, b);
  if (s == 0) return SuperPolynomial(n);
  Monomial m(a);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint16_t>(m[i] + b[i]);
  return from_monomial(n, m, Rational(s));
}

}  // namespace

std::vector<std::vector<unsigned>> exponent_vectors(std::size_t n, unsigned d) {
  std::vector<std::vector<unsigned>> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  for (unsigned first = d + 1; first-- > 0;) {
    for (auto& rest : exponent_vectors(n - 1, d - first)) {
      std::vector<unsigned> v{first};
      v.insert(v.end(), rest.begin(), rest.end());
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

int GradedCategory::add_block(Block b) {
  blocks.push_back(std::move(b));
  return static_cast<int>(blocks.size() - 1);
}

std::optional<int> GradedCategory::find_block(int src, int tgt, int inner, int coh) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.src == src && b.tgt == tgt && b.inner == inner && b.coh == coh) return static_cast<int>(i);
  }
  return std::nullopt;
}

const GradedCategory::Product* GradedCategory::product(int u, int v) const {
  auto it = mult.find({u, v});
  if (it != mult.end()) return &it->second;
  if (beyond.count({u, v}))
    throw CutoffError("product " + blocks[u].name + " * " + blocks[v].name + " lies beyond weight " +
                      std::to_string(max_weight));
  return nullptr;
}

void GradedCategory::build_products(const Rule& rule) {
  for (std::size_t u = 0; u < blocks.size(); ++u) {
    for (std::size_t v = 0; v < blocks.size(); ++v) {
      const auto& bu = blocks[u];
      const auto& bv = blocks[v];
      if (bu.tgt != bv.src) continue;
      auto out = find_block(bu.src, bv.tgt, bu.inner + bv.inner, bu.coh + bv.coh);
      SparseMatrix table(out ? blocks[*out].dim() : 0, bu.dim() * bv.dim());
      bool nonzero = false;
      for (std::size_t i = 0; i < bu.dim(); ++i) {
        for (std::size_t j = 0; j < bv.dim(); ++j) {
          auto p = rule(static_cast<int>(u), bu.basis[i], static_cast<int>(v), bv.basis[j]);
          if (p.is_zero()) continue;
          nonzero = true;
          if (!out) break;
          for (auto& [r, c] : coords(*out, p)) table.add(r, i * bv.dim() + j, c);
        }
        if (nonzero && !out) break;
      }
      if (!out) {
        if (nonzero) beyond.insert({static_cast<int>(u), static_cast<int>(v)});
        continue;
      }
      if (!table.is_zero()) mult.emplace(std::make_pair(static_cast<int>(u), static_cast<int>(v)), Product{*out, table});
    }
  }
}

void GradedCategory::set_differential(int block, const std::function<SuperPolynomial(const Monomial&)>& d) {
  const auto& b = blocks[block];
  auto out = find_block(b.src, b.tgt, b.inner, b.coh + 1);
  if (!out) {
    for (const auto& m : b.basis)
      if (!d(m).is_zero()) throw StructuralError("differential of " + b.name + " has no target block");
    return;
  }
  SparseMatrix table(blocks[*out].dim(), b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (auto& [r, c] : coords(*out, d(b.basis[i]))) table.add(r, i, c);
  if (!table.is_zero()) diff.emplace(block, Differential{*out, table});
}

SparseVec GradedCategory::coords(int block, const SuperPolynomial& p) const {
  const auto& b = blocks[block];
  SparseVec out;
  for (const auto& [m, c] : p.poly().terms()) {
    auto it = b.index.find(m);
    if (it == b.index.end()) throw StructuralError("element has a term outside block " + b.name);
    out.emplace_back(it->second, c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  return out;
}

SuperPolynomial GradedCategory::element(int block, const SparseVec& v) const {
  SuperPolynomial out(n);
  for (const auto& [i, c] : v) out += from_monomial(n, blocks[block].basis[i], c);
  return out;
}

SuperPolynomial GradedCategory::basis_element(int block, std::size_t i) const {
  return from_monomial(n, blocks[block].basis[i], Rational(1));
}

std::shared_ptr<const GradedCategory> symmetric_category(std::size_t n, long max_weight) {
  if (max_weight < 0) throw UsageError("symmetric_category: negative weight");
  auto cat = std::make_shared<GradedCategory>();
  cat->n = n;
  cat->objects = {"a"};
  cat->max_weight = max_weight;
  for (long d = 0; d <= max_weight; ++d) {
    auto b = make_block("A" + std::to_string(d), 'A', 0, 0, static_cast<int>(d), 0, d, d == 0);
    for (auto& e : exponent_vectors(n, static_cast<unsigned>(d))) push(b, make_monomial(n, e, {}));
    cat->add_block(std::move(b));
    if (n == 0) break;
  }
  cat->build_products([n](int, const Monomial& a, int, const Monomial& b) { return multiply(n, a, b); });
  return cat;
}

std::shared_ptr<const GradedCategory> exterior_category(std::size_t n) {
  auto cat = std::make_shared<GradedCategory>();
  cat->n = n;
  cat->objects = {"b"};
  cat->max_weight = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    auto b = make_block("B" + std::to_string(k), 'B', 0, 0, -static_cast<int>(k), static_cast<int>(k), 0, k == 0);
    for (auto& L : subsets(n, k)) push(b, make_monomial(n, {}, L));
    cat->add_block(std::move(b));
  }
  cat->build_products([n](int, const Monomial& a, int, const Monomial& b) { return multiply(n, a, b); });
  return cat;
}

std::shared_ptr<const GradedCategory> keller_category(std::size_t n, long max_weight, KoszulNormalization norm,
                                                     bool scalar_module) {
  if (max_weight < 0) throw UsageError("keller_category: negative weight");
  auto cat = std::make_shared<GradedCategory>();
  cat->n = n;
  cat->objects = {"a", "b"};
  cat->max_weight = max_weight;
  const int a = 0, bo = 1;
  for (long d = 0; d <= max_weight; ++d) {
    auto b = make_block("A" + std::to_string(d), 'A', a, a, static_cast<int>(d), 0, d, d == 0);
    for (auto& e : exponent_vectors(n, static_cast<unsigned>(d))) push(b, make_monomial(n, e, {}));
    cat->add_block(std::move(b));
    if (n == 0) break;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    auto b = make_block("B" + std::to_string(k), 'B', bo, bo, -static_cast<int>(k), static_cast<int>(k), 0, k == 0);
    for (auto& L : subsets(n, k)) push(b, make_monomial(n, {}, L));
    cat->add_block(std::move(b));
  }
  if (scalar_module) {
    auto b = make_block("K(0,0)", 'K', bo, a, 0, 0, 0, false);
    push(b, Monomial(2 * n, 0));
    cat->add_block(std::move(b));
  } else {
    for (long w = 0; w <= max_weight; ++w) {
      for (std::size_t l = 0; l <= n && static_cast<long>(l) <= w; ++l) {
        auto s = static_cast<unsigned>(w - static_cast<long>(l));
        if (n == 0 && s > 0) continue;
        auto b = make_block("K(" + std::to_string(s) + "," + std::to_string(l) + ")", 'K', bo, a, static_cast<int>(w),
                            -static_cast<int>(l), w, false);
        for (auto& e : exponent_vectors(n, s))
          for (auto& L : subsets(n, l)) push(b, make_monomial(n, e, L));
        cat->add_block(std::move(b));
      }
    }
  }
  const GradedCategory* raw = cat.get();
  cat->build_products([n, raw, scalar_module](int u, const Monomial& m, int v, const Monomial& mp) {
    char ku = raw->blocks[u].kind, kv = raw->blocks[v].kind;
    if (ku == 'B' && kv == 'K') {
      if (scalar_module && !is_const(m)) return SuperPolynomial(n);
      return contract_action(n, m, mp);
    }
    if (ku == 'K' && kv == 'A') {
      if (scalar_module && !is_const(mp)) return SuperPolynomial(n);
      return multiply(n, m, mp);
    }
    return multiply(n, m, mp);
  });
  if (!scalar_module && n > 0) {
    Rational c = norm == KoszulNormalization::normalized ? Rational(1, static_cast<long>(n)) : Rational(1);
    c.canonicalize();
    for (std::size_t i = 0; i < cat->blocks.size(); ++i) {
      if (cat->blocks[i].kind != 'K') continue;
      cat->set_differential(static_cast<int>(i), [n, c](const Monomial& k) {
        SuperPolynomial out(n);
        for (std::size_t p = 1; p <= n; ++p) {
          Monomial xi(2 * n, 0);
          xi[n + p - 1] = 1;
          Monomial xp(2 * n, 0);
          xp[p - 1] = 1;
          auto acted = contract_action(n, xi, k);
          for (const auto& [mm, cc] : acted.poly().terms()) out += multiply(n, mm, xp) * cc;
        }
        return out * c;
      });
    }
  }
  return cat;
}

}  // namespace koszulq
