#include "koszulq/quadalg.hpp"

#include <algorithm>
#include <functional>

#include "koszulq/errors.hpp"

namespace koszulq {

namespace {

TruncVec unit_vec(std::size_t dim, std::size_t order, std::size_t i, const Rational& c = 1) {
  TruncVec v(dim, TruncSeries(order));
  v[i][0] = c;
  return v;
}

std::size_t ipow(std::size_t g, std::size_t d) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < d; ++k) r *= g;
  return r;
}

}  // namespace

QuadraticPresentation QuadraticPresentation::symmetric(std::size_t n, std::optional<std::size_t> trunc) {
  QuadraticPresentation p;
  p.trunc = trunc;
  for (std::size_t i = 1; i <= n; ++i) p.names.push_back("x" + std::to_string(i));
  p.parity.assign(n, 0);
  const std::size_t o = p.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto r = unit_vec(n * n, o, i * n + j);
      r[j * n + i][0] = -1;
      p.relations.push_back(r);
    }
  return p;
}

QuadraticPresentation QuadraticPresentation::exterior(std::size_t n, std::optional<std::size_t> trunc) {
  QuadraticPresentation p;
  p.trunc = trunc;
  for (std::size_t i = 1; i <= n; ++i) p.names.push_back("xi" + std::to_string(i));
  p.parity.assign(n, 1);
  const std::size_t o = p.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto r = unit_vec(n * n, o, i * n + j);
      if (j != i) r[j * n + i][0] = 1;
      p.relations.push_back(r);
    }
  return p;
}

QuadraticPresentation QuadraticPresentation::free_algebra(std::size_t n, int parity, std::optional<std::size_t> trunc) {
  QuadraticPresentation p;
  p.trunc = trunc;
  for (std::size_t i = 1; i <= n; ++i) p.names.push_back((parity ? "xi" : "x") + std::to_string(i));
  p.parity.assign(n, parity);
  return p;
}

std::size_t word_count(std::size_t g, std::size_t d) { return ipow(g, d); }

std::vector<std::size_t> word_letters(std::size_t w, std::size_t g, std::size_t d) {
  std::vector<std::size_t> out(d);
  for (std::size_t k = d; k-- > 0;) {
    out[k] = w % g;
    w /= g;
  }
  return out;
}

std::string word_name(const QuadraticPresentation& p, std::size_t w, std::size_t d) {
  if (d == 0) return "1";
  std::string s;
  for (auto l : word_letters(w, p.g(), d)) {
    if (!s.empty()) s += "*";
    s += p.names[l];
  }
  return s;
}

Subspace relation_module(const QuadraticPresentation& p) {
  return submodule_span(p.relations, p.g() * p.g(), p.order());
}

void validate(const QuadraticPresentation& p) {
  const std::size_t g = p.g(), o = p.order();
  if (p.parity.size() != g) throw UsageError("presentation: parity list does not match generators");
  for (int par : p.parity)
    if (par != 0 && par != 1) throw UsageError("presentation: parity must be 0 or 1");
  for (const auto& r : p.relations) {
    if (r.size() != g * g) throw UsageError("presentation: relation has " + std::to_string(r.size()) + " coordinates, expected " + std::to_string(g * g));
    for (const auto& c : r)
      if (c.order() != o) throw UsageError("presentation: relation coefficient has the wrong truncation order");
  }
  // Independence of the h = 0 reductions makes I a free direct summand.
  Echelon reduced(g * g);
  std::size_t rank0 = 0;
  for (const auto& r : p.relations) {
    SparseVec v;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (sgn(r[i][0]) != 0) v.emplace_back(i, r[i][0]);
    rank0 += reduced.insert(v);
  }
  if (rank0 == p.relations.size()) return;
  Subspace m = relation_module(p);
  // Find the first h-degree e with M cap h^e F bigger than h^e M.
  const std::size_t amb = m.ambient();
  auto basis = m.basis();
  for (std::size_t e = 1; e <= o; ++e) {
    Subspace he_f(amb);
    for (std::size_t w = 0; w < g * g; ++w)
      for (std::size_t k = e; k <= o; ++k) he_f.insert({{w * (o + 1) + k, Rational(1)}});
    Subspace he_m(amb);
    for (const auto& b : basis) {
      SparseVec s;
      for (const auto& [idx, x] : b)
        if (idx % (o + 1) + e <= o) s.emplace_back(idx + e, x);
      he_m.insert(s);
    }
    if (m.intersect(he_f).dim() != he_m.dim())
      throw StructuralError("presentation: relation module is not a direct summand (torsion in h-degree " + std::to_string(e) + ")");
  }
  throw StructuralError("presentation: relations are linearly dependent");
}

Subspace pad(const Subspace& m, std::size_t g, std::size_t order, std::size_t a, std::size_t l, std::size_t r) {
  const std::size_t s = order + 1;
  const std::size_t nl = ipow(g, l), nr = ipow(g, r), na = ipow(g, a);
  Subspace out(ipow(g, l + a + r) * s);
  auto basis = m.basis();
  for (std::size_t u = 0; u < nl; ++u)
    for (std::size_t w = 0; w < nr; ++w)
      for (const auto& b : basis) {
        SparseVec v;
        v.reserve(b.size());
        for (const auto& [idx, x] : b) {
          std::size_t word = idx / s, k = idx % s;
          v.emplace_back(((u * na + word) * nr + w) * s + k, x);
        }
        out.insert(v);
      }
  return out;
}

Subspace ideal_component(const QuadraticPresentation& p, std::size_t d) {
  const std::size_t g = p.g(), o = p.order();
  Subspace out(ipow(g, d) * (o + 1));
  if (d < 2) return out;
  Subspace rel = relation_module(p);
  for (std::size_t l = 0; l + 2 <= d; ++l) {
    Subspace piece = pad(rel, g, o, 2, l, d - 2 - l);
    for (const auto& v : piece.basis()) out.insert(v);
  }
  return out;
}

namespace {

std::string flip_name(const std::string& s) {
  if (s.rfind("xi", 0) == 0) return "x" + s.substr(2);
  if (s.rfind("x", 0) == 0) return "xi" + s.substr(1);
  return s + "!";
}

}  // namespace

QuadraticPresentation quadratic_dual(const QuadraticPresentation& p) {
  validate(p);
  const std::size_t g = p.g(), o = p.order();
  QuadraticPresentation d;
  d.trunc = p.trunc;
  for (std::size_t i = 0; i < g; ++i) {
    d.names.push_back(flip_name(p.names[i]));
    d.parity.push_back(1 - p.parity[i]);
  }
  TruncMatrix pairing(p.relations.size(), g * g, o);
  for (std::size_t r = 0; r < p.relations.size(); ++r)
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        const auto& c = p.relations[r][i * g + j];
        pairing.add(r, i * g + j, p.parity[j] ? -c : c);
      }
  d.relations = trunc_kernel(pairing);
  return d;
}

QuadraticPresentation opposite(const QuadraticPresentation& p) {
  const std::size_t g = p.g();
  QuadraticPresentation q = p;
  for (auto& r : q.relations) {
    TruncVec f(g * g, TruncSeries(p.order()));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        f[j * g + i] = r[i * g + j];
        if (p.parity[i] && p.parity[j]) f[j * g + i] = -f[j * g + i];
      }
    r = std::move(f);
  }
  return q;
}

bool same_relations(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  if (a.g() != b.g() || a.order() != b.order()) throw UsageError("comparing presentations of different shape");
  return relation_module(a) == relation_module(b);
}

// ---------------------------------------------------------------------------
// Normal forms

TruncVec GradedComponentBasis::normal_form(const TruncVec& words) const { return projection.apply(words); }

GradedComponentBasis graded_component(const QuadraticPresentation& p, std::size_t d) {
  const std::size_t g = p.g(), o = p.order(), s = o + 1;
  const std::size_t nw = ipow(g, d);
  GradedComponentBasis out;
  out.degree = d;
  out.g = g;
  out.order = o;
  Subspace ideal = ideal_component(p, d);
  auto basis = ideal.basis();

  // Leading words of the ideal mod h, with the largest word first in column order.
  Echelon lead(nw);
  for (const auto& b : basis) {
    SparseVec v;
    for (const auto& [idx, x] : b)
      if (idx % s == 0) v.emplace_back(nw - 1 - idx / s, x);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    lead.insert(v);
  }
  std::vector<bool> leading(nw, false);
  for (const auto& [col, row] : lead.pivots()) leading[nw - 1 - col] = true;
  for (std::size_t w = 0; w < nw; ++w)
    if (!leading[w]) out.transversal.push_back(w);

  out.q_dim = nw * s - ideal.dim();
  out.projection = TruncMatrix(out.transversal.size(), nw, o);

  // Column order: non-transversal words first, so reduction leaves transversal coordinates.
  std::vector<std::size_t> perm(nw), tpos(nw, SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t w = 0; w < nw; ++w)
    if (leading[w]) perm[w] = next++;
  for (std::size_t t = 0; t < out.transversal.size(); ++t) {
    perm[out.transversal[t]] = next++;
    tpos[out.transversal[t]] = t;
  }
  std::vector<std::size_t> inv(nw);
  for (std::size_t w = 0; w < nw; ++w) inv[perm[w]] = w;
  auto permute = [&](const SparseVec& v) {
    SparseVec r;
    r.reserve(v.size());
    for (const auto& [idx, x] : v) r.emplace_back(perm[idx / s] * s + idx % s, x);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
  };
  Echelon ech(nw * s);
  for (const auto& b : basis) ech.insert(permute(b));

  out.free = out.q_dim == s * out.transversal.size();
  for (std::size_t w = 0; w < nw; ++w) {
    SparseVec nf = ech.reduce(permute({{w * s, Rational(1)}}));
    for (const auto& [idx, x] : nf) {
      std::size_t word = inv[idx / s];
      if (tpos[word] == SIZE_MAX) {
        out.free = false;
        continue;
      }
      TruncSeries c(o);
      c[idx % s] = x;
      out.projection.add(tpos[word], w, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Koszul complex

Subspace KoszulComplexData::chains(std::size_t j, std::size_t i) const {
  return pad(K.at(i), presentation.g(), presentation.order(), i, j, 0);
}

namespace {

/// R-tensor product of h-stable subspaces A of V^{(x)a} and B of V^{(x)b}.
Subspace tensor(const Subspace& A, std::size_t a, const Subspace& B, std::size_t b, std::size_t g, std::size_t order) {
  const std::size_t s = order + 1, nb = ipow(g, b);
  Subspace out(ipow(g, a + b) * s);
  auto ba = A.basis(), bb = B.basis();
  for (const auto& u : ba)
    for (const auto& v : bb) {
      std::map<std::size_t, Rational> acc;
      for (const auto& [iu, xu] : u)
        for (const auto& [iv, xv] : v) {
          std::size_t k = iu % s + iv % s;
          if (k > order) continue;
          acc[((iu / s) * nb + iv / s) * s + k] += xu * xv;
        }
      SparseVec w;
      for (auto& [idx, x] : acc)
        if (sgn(x) != 0) w.emplace_back(idx, x);
      out.insert(w);
    }
  return out;
}

}  // namespace

Subspace KoszulComplexData::relations_in(std::size_t j, std::size_t i) const {
  return tensor(ideal_component(presentation, j), j, K.at(i), i, presentation.g(), presentation.order());
}

KoszulComplexData koszul_complex(const QuadraticPresentation& p, std::size_t top) {
  validate(p);
  const std::size_t g = p.g(), o = p.order(), s = o + 1;
  KoszulComplexData k;
  k.presentation = p;
  k.top = top;
  Subspace rel = relation_module(p);
  for (std::size_t i = 0; i <= top; ++i) {
    Subspace full(ipow(g, i) * s);
    if (i < 2) {
      for (std::size_t idx = 0; idx < full.ambient(); ++idx) full.insert({{idx, Rational(1)}});
      k.K.push_back(std::move(full));
      continue;
    }
    Subspace acc = pad(rel, g, o, 2, 0, i - 2);
    for (std::size_t l = 1; l + 2 <= i; ++l) acc = acc.intersect(pad(rel, g, o, 2, l, i - 2 - l));
    k.K.push_back(std::move(acc));
  }
  // d^2 = 0: V^j (x) K_i lands in I_{j+2} (x) K_{i-2}.
  for (std::size_t i = 2; i <= top; ++i) {
    Subspace u = k.chains(0, i);
    Subspace w = k.relations_in(2, i - 2);
    for (const auto& v : u.basis())
      if (!w.contains(v)) throw StructuralError("Koszul differential does not square to zero at K_" + std::to_string(i));
  }
  return k;
}

KoszulCohomology koszul_acyclicity(const KoszulComplexData& k, std::size_t inner_cutoff) {
  KoszulCohomology out;
  out.order = k.presentation.order();
  const std::size_t s = out.order + 1;
  bool ok = true;
  for (std::size_t m = 0; m <= inner_cutoff; ++m)
    for (std::size_t i = 0; i <= std::min(m, k.top); ++i) {
      const std::size_t j = m - i;
      if (j > 0 && i + 1 > k.top) continue;  // incoming differential not built
      Subspace u = k.chains(j, i);
      Subspace w = k.relations_in(j, i);
      std::size_t ker = i == 0 ? u.dim() : u.intersect(k.relations_in(j + 1, i - 1)).dim();
      std::size_t im = w.dim();
      if (j > 0) {
        Subspace prev = k.chains(j - 1, i + 1);
        im = (prev + w).dim();
      }
      std::size_t h = ker - im;
      out.q_dims[{i, m}] = h;
      if ((i == 0 && m == 0) ? h != s : h != 0) ok = false;
    }
  out.koszul_up_to_cutoff = ok;
  return out;
}

// ---------------------------------------------------------------------------
// Bar complex

std::map<std::pair<std::size_t, long>, std::size_t> ext_dimensions_via_bar(const QuadraticPresentation& p,
                                                                            std::size_t hom_cutoff,
                                                                            std::size_t inner_cutoff) {
  validate(p);
  const std::size_t g = p.g(), o = p.order(), s = o + 1;
  std::vector<GradedComponentBasis> comp;
  for (std::size_t d = 0; d <= inner_cutoff; ++d) {
    comp.push_back(graded_component(p, d));
    if (!comp.back().free) throw StructuralError("bar complex: A_" + std::to_string(d) + " is not free over the ring");
  }

  // Basis of B_a(m): compositions of m into a positive parts times transversal tuples.
  struct Chain {
    std::vector<std::size_t> parts;
    std::vector<std::size_t> idx;  // positions into the transversals
  };
  auto enumerate = [&](std::size_t a, std::size_t m) {
    std::vector<Chain> out;
    Chain cur;
    std::function<void(std::size_t)> rec = [&](std::size_t left) {
      if (cur.parts.size() == a) {
        if (left != 0) return;
        std::function<void(std::size_t)> tup = [&](std::size_t pos) {
          if (pos == a) {
            out.push_back(cur);
            return;
          }
          for (std::size_t t = 0; t < comp[cur.parts[pos]].transversal.size(); ++t) {
            cur.idx.push_back(t);
            tup(pos + 1);
            cur.idx.pop_back();
          }
        };
        tup(0);
        return;
      }
      for (std::size_t part = 1; part <= left; ++part) {
        cur.parts.push_back(part);
        rec(left - part);
        cur.parts.pop_back();
      }
    };
    rec(m);
    return out;
  };
  auto key = [](const Chain& c) { return std::make_pair(c.parts, c.idx); };

  std::map<std::pair<std::size_t, long>, std::size_t> table;
  for (std::size_t m = 0; m <= inner_cutoff; ++m) {
    std::vector<std::vector<Chain>> B(hom_cutoff + 2);
    for (std::size_t a = 0; a <= hom_cutoff + 1; ++a)
      if (a <= m) B[a] = enumerate(a, m);
    // rank of d_a : B_a -> B_{a-1} for a >= 2.
    std::vector<std::size_t> rk(hom_cutoff + 2, 0);
    for (std::size_t a = 2; a <= std::min(hom_cutoff + 1, m); ++a) {
      std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::size_t> target;
      for (std::size_t r = 0; r < B[a - 1].size(); ++r) target[key(B[a - 1][r])] = r;
      TruncMatrix d(B[a - 1].size(), B[a].size(), o);
      for (std::size_t c = 0; c < B[a].size(); ++c) {
        const Chain& ch = B[a][c];
        for (std::size_t i = 0; i + 1 < a; ++i) {
          const std::size_t p1 = ch.parts[i], p2 = ch.parts[i + 1];
          std::size_t w = comp[p1].transversal[ch.idx[i]] * word_count(g, p2) + comp[p2].transversal[ch.idx[i + 1]];
          const auto& prod = comp[p1 + p2];
          Chain merged;
          merged.parts = ch.parts;
          merged.parts[i] = p1 + p2;
          merged.parts.erase(merged.parts.begin() + i + 1);
          merged.idx = ch.idx;
          merged.idx.erase(merged.idx.begin() + i + 1);
          for (std::size_t t = 0; t < prod.transversal.size(); ++t) {
            TruncSeries coef = prod.projection.at(t, w);
            if (coef.is_zero()) continue;
            merged.idx[i] = t;
            if ((i + 1) % 2 == 1) coef = -coef;
            d.add(target.at(key(merged)), c, coef);
          }
        }
      }
      rk[a] = rank(d.expand());
    }
    for (std::size_t a = 0; a <= std::min(hom_cutoff, m); ++a) {
      std::size_t dim = B[a].size() * s;
      std::size_t h = dim - rk[a] - (a + 1 <= hom_cutoff + 1 ? rk[a + 1] : 0);
      table[{a, -static_cast<long>(m)}] = h;
    }
    for (std::size_t a = m + 1; a <= hom_cutoff; ++a) table[{a, -static_cast<long>(m)}] = 0;
  }
  return table;
}

}  // namespace koszulq
