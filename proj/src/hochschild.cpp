#include "koszulq/hochschild.hpp"

#include "koszulq/errors.hpp"

namespace koszulq {

Cochain polynomial_cochain(const std::shared_ptr<const GradedCategory>& cat, char kind, std::size_t arity, long cutoff,
                           const std::function<SuperPolynomial(const std::vector<SuperPolynomial>&)>& fn) {
  Cochain out(cat, cutoff);
  std::vector<int> kind_blocks;
  for (std::size_t b = 0; b < cat->blocks.size(); ++b)
    if (cat->blocks[b].kind == kind) kind_blocks.push_back(static_cast<int>(b));
  auto locate = [&](const SuperPolynomial& p) {
    std::map<int, SparseVec> parts;
    for (const auto& [m, c] : p.poly().terms()) {
      bool found = false;
      for (int b : kind_blocks) {
        auto it = cat->blocks[b].index.find(m);
        if (it == cat->blocks[b].index.end()) continue;
        parts[b].emplace_back(it->second, c);
        found = true;
        break;
      }
      if (!found) throw CutoffError("polynomial_cochain: value beyond the materialized blocks");
    }
    return parts;
  };
  for (const auto& src : source_sequences(*cat, arity, cutoff)) {
    bool ok = true;
    for (int b : src) ok = ok && cat->blocks[b].kind == kind;
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
      for (auto& [b, v] : locate(fn(args))) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        out.add_column({src, b}, col, v);
      }
    }
  }
  return out;
}

int hkr_bracket_sign(unsigned k1, unsigned k2) {
  auto s = [](long k) { return k * (k - 1) / 2; };
  return (s(k1) + s(k2) + s(static_cast<long>(k1 + k2) - 1)) % 2 == 0 ? 1 : -1;
}

Cochain hkr(const std::shared_ptr<const GradedCategory>& cat, const SuperPolynomial& gamma, long cutoff) {
  if (gamma.n() != cat->n) throw UsageError("hkr: dimension mismatch");
  Cochain out(cat, cutoff);
  for (unsigned k = 0; k <= gamma.n(); ++k) {
    auto part = gamma.lambda_component(k);
    if (part.is_zero()) continue;
    Rational fact(1);
    for (unsigned i = 2; i <= k; ++i) fact *= i;
    Rational inv = 1 / fact;
    out += polynomial_cochain(cat, 'A', k, cutoff, [&](const std::vector<SuperPolynomial>& fs) {
      return contract(part, fs) * inv;
    });
  }
  return out;
}

}  // namespace koszulq
