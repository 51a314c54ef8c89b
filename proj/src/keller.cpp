#include "koszulq/keller.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "koszulq/errors.hpp"

namespace koszulq {

namespace {

using CatPtr = std::shared_ptr<const GradedCategory>;
using KeyPred = std::function<bool(const CochainKey&)>;

Cochain filtered(const Cochain& c, const KeyPred& keep) {
  Cochain out(c.category_ptr(), c.cutoff());
  for (const auto& [key, comp] : c.components())
    if (keep(key))
      for (const auto& [col, v] : comp.cols) out.add_column(key, col, v);
  return out;
}

bool all_kind(const GradedCategory& cat, const CochainKey& key, char kind) {
  if (cat.blocks[key.tgt].kind != kind) return false;
  return std::all_of(key.src.begin(), key.src.end(), [&](int b) { return cat.blocks[b].kind == kind; });
}

// Moves the pure-`kind` part of c onto `to`, matching blocks by degrees.
Cochain transfer(const Cochain& c, char kind, const CatPtr& to, char to_kind) {
  const auto& from = c.category();
  auto match = [&](int b) {
    const auto& blk = from.blocks[b];
    for (std::size_t i = 0; i < to->blocks.size(); ++i) {
      const auto& t = to->blocks[i];
      if (t.kind == to_kind && t.inner == blk.inner && t.coh == blk.coh) {
        if (t.basis != blk.basis) throw UsageError("projection: block bases differ");
        return static_cast<int>(i);
      }
    }
    throw CutoffError("projection: block " + blk.name + " is not materialized in the target category");
  };
  Cochain out(to, c.cutoff());
  for (const auto& [key, comp] : c.components()) {
    if (!all_kind(from, key, kind)) continue;
    CochainKey k2;
    k2.tgt = match(key.tgt);
    for (int b : key.src) k2.src.push_back(match(b));
    for (const auto& [col, v] : comp.cols) out.add_column(k2, col, v);
  }
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// A homogeneous piece (degree, inner shift) of a cochain space inside the window.
CochainBasis piece(const GradedCategory& cat, std::size_t max_arity, long window, int degree, int inner,
                   const KeyPred& pattern) {
  std::vector<std::size_t> arities;
  for (std::size_t a = 0; a <= max_arity; ++a) arities.push_back(a);
  return cochain_basis(cat, arities, window, [&](const CochainKey& key) {
    return pattern(key) && shifted_degree(cat, key) == degree && inner_shift(cat, key) == inner;
  });
}

// Matrix of (restriction to pattern) o D between two pieces.
SparseMatrix differential_matrix(const CatPtr& cat, const CochainBasis& from, const CochainBasis& to, long window,
                                 const KeyPred& pattern) {
  return assemble(cat, from, to, window,
                  [&](const Cochain& c) { return filtered(hoch_differential(c), pattern); });
}

SparseMatrix hcat(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& [c, v] : a.row_vec(r)) out.add(r, c, v);
    for (const auto& [c, v] : b.row_vec(r)) out.add(r, a.cols() + c, v);
  }
  return out;
}

// Action cochains: the (K) -> K part of D(b^) for every basis element b of the
// blocks of `kind` with the given inner degree, where b^ is the arity-0 cochain
// with value b. On K this is k -> m2(b, k) or k -> m2(k, a) up to sign.
std::vector<Cochain> action_cochains(const CatPtr& cat, char kind, int block_inner, long window) {
  std::vector<Cochain> out;
  const auto& C = *cat;
  auto unary_K = [&](const CochainKey& key) {
    return key.src.size() == 1 && C.blocks[key.src[0]].kind == 'K' && C.blocks[key.tgt].kind == 'K';
  };
  for (std::size_t u = 0; u < C.blocks.size(); ++u) {
    const auto& ub = C.blocks[u];
    if (ub.kind != kind || ub.inner != block_inner) continue;
    for (std::size_t i = 0; i < ub.dim(); ++i) {
      Cochain hat(cat, window);
      hat.add_entry({{}, static_cast<int>(u)}, 0, i, Rational(1));
      out.push_back(filtered(hoch_differential(hat), unary_K));
    }
  }
  return out;
}

void check_window(std::size_t n, long window) {
  if (window < 0) throw UsageError("window must be non-negative");
  if (n > 3 || (n == 3 && window > 3) || window > 4)
    throw UsageError("window too large for an exact rank computation (n <= 2: window <= 4; n = 3: window <= 3)");
}

}  // namespace

void check_keller(const GradedCategory& cat) {
  std::set<char> kinds;
  for (const auto& b : cat.blocks) kinds.insert(b.kind);
  if (!kinds.count('A') || !kinds.count('B') || !kinds.count('K'))
    throw UsageError("expected a Keller category with A, B and K blocks");
}

KellerCochain total_differential(const KellerCochain& c) {
  check_keller(c.category());
  return hoch_differential(c);
}

KellerCochain psi_K(const KellerCochain& c) {
  const auto& cat = c.category();
  return filtered(c, [&](const CochainKey& key) { return !all_kind(cat, key, 'A') && !all_kind(cat, key, 'B'); });
}

Cochain project_A(const KellerCochain& c, const CatPtr& sym) {
  check_keller(c.category());
  return transfer(c, 'A', sym, 'A');
}

Cochain project_B(const KellerCochain& c, const CatPtr& ext) {
  check_keller(c.category());
  return transfer(c, 'B', ext, 'B');
}

KellerCochain embed(const Cochain& psi, const CatPtr& keller) {
  check_keller(*keller);
  const auto& from = psi.category();
  bool exterior = std::any_of(from.blocks.begin(), from.blocks.end(), [](const Block& b) { return b.kind == 'B'; });
  char kind = exterior ? 'B' : 'A';
  return transfer(psi, kind, keller, kind);
}

std::string AdmissibilityReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["window"] = window;
  j["scalar_module"] = scalar_module;
  j["pass"] = pass;
  j["components"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["components"].push_back({{"side", e.side},
                               {"bidegree", {e.degree, e.inner}},
                               {"expected_dim", e.expected_dim},
                               {"computed_dim", e.computed_dim},
                               {"image_rank", e.image_rank},
                               {"pass", e.pass}});
  return j.dump(2);
}

std::string ConeReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["window"] = window;
  j["scalar_module"] = scalar_module;
  j["pass"] = pass;
  j["components"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["components"].push_back({{"projection", e.projection},
                               {"bidegree", {e.degree, e.inner}},
                               {"cohomology_dim", e.cone_dim},
                               {"pass", e.pass}});
  return j.dump(2);
}

AdmissibilityReport keller_admissibility(std::size_t n, long window, bool scalar_module) {
  check_window(n, window);
  AdmissibilityReport rep;
  rep.n = n;
  rep.window = window;
  rep.scalar_module = scalar_module;
  const long cat_weight = 2 * window + 1;
  auto cat = keller_category(n, cat_weight, KoszulNormalization::plain, scalar_module);
  const auto& C = *cat;
  auto is_K = [&](int b) { return C.blocks[b].kind == 'K'; };

  // Hom over A: sources K A ... A.
  KeyPred right = [&](const CochainKey& key) {
    if (!is_K(key.tgt) || key.src.empty() || !is_K(key.src.front())) return false;
    for (std::size_t i = 1; i < key.src.size(); ++i)
      if (C.blocks[key.src[i]].kind != 'A') return false;
    return true;
  };
  // Hom over B: sources B ... B K.
  KeyPred left = [&](const CochainKey& key) {
    if (!is_K(key.tgt) || key.src.empty() || !is_K(key.src.back())) return false;
    for (std::size_t i = 0; i + 1 < key.src.size(); ++i)
      if (C.blocks[key.src[i]].kind != 'B') return false;
    return true;
  };

  struct Side {
    std::string name;
    KeyPred pattern;
    std::size_t max_arity;
    std::vector<std::pair<int, int>> grid;
    std::function<std::size_t(int, int)> expected;
    std::function<std::vector<Cochain>(int, int)> actions;
  };
  std::vector<Side> sides;
  {
    Side s;
    s.name = "A";
    s.pattern = right;
    s.max_arity = static_cast<std::size_t>(window) + 2;
    for (int d = -1; d <= static_cast<int>(n) + 1; ++d)
      for (int t = -static_cast<int>(n) - 1; t <= 1; ++t) s.grid.emplace_back(d, t);
    s.expected = [n](int d, int t) { return d >= 0 && t == -d ? binom(n, d) : 0; };
    s.actions = [&, window](int d, int t) {
      if (d < 0 || t != -d) return std::vector<Cochain>{};
      return action_cochains(cat, 'B', t, window);
    };
    sides.push_back(std::move(s));
  }
  {
    Side s;
    s.name = "B";
    s.pattern = left;
    s.max_arity = static_cast<std::size_t>(2 * window) + 3;
    for (int d = -1; d <= 1; ++d)
      for (int t = -1; t <= window; ++t) s.grid.emplace_back(d, t);
    s.expected = [n](int d, int t) -> std::size_t {
      if (d != 0 || t < 0) return 0;
      return n == 0 ? (t == 0 ? 1 : 0) : binom(n + t - 1, t);
    };
    s.actions = [&, window](int d, int t) {
      if (d != 0 || t < 0) return std::vector<Cochain>{};
      return action_cochains(cat, 'A', t, window);
    };
    sides.push_back(std::move(s));
  }

  rep.pass = true;
  for (const auto& side : sides) {
    for (auto [d, t] : side.grid) {
      auto prev = piece(C, side.max_arity, window, d - 1, t, side.pattern);
      auto cur = piece(C, side.max_arity, window, d, t, side.pattern);
      auto next = piece(C, side.max_arity, window, d + 1, t, side.pattern);
      AdmissibilityEntry e;
      e.side = side.name;
      e.degree = d;
      e.inner = t;
      e.expected_dim = side.expected(d, t);
      SparseMatrix in = differential_matrix(cat, prev, cur, window, side.pattern);
      SparseMatrix out = differential_matrix(cat, cur, next, window, side.pattern);
      std::size_t rin = rank(in), rout = rank(out);
      e.computed_dim = cur.size() - rin - rout;
      auto acts = side.actions(d, t);
      if (!acts.empty()) {
        SparseMatrix am(cur.size(), acts.size());
        bool closed = true;
        for (std::size_t i = 0; i < acts.size(); ++i) {
          if (!filtered(hoch_differential(acts[i]), side.pattern).is_zero()) closed = false;
          for (const auto& [r, v] : cur.coordinates(acts[i])) am.add(r, i, v);
        }
        if (!closed) throw StructuralError("keller_admissibility: action cochain is not closed");
        e.image_rank = rank(hcat(in, am)) - rin;
      }
      e.pass = e.computed_dim == e.expected_dim && e.image_rank == e.expected_dim;
      rep.pass = rep.pass && e.pass;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

ConeReport cone_acyclicity_check(std::size_t n, long window, bool scalar_module) {
  check_window(n, window);
  ConeReport rep;
  rep.n = n;
  rep.window = window;
  rep.scalar_module = scalar_module;
  rep.pass = true;
  const long cat_weight = 2 * window + 1;
  auto cat = keller_category(n, cat_weight, KoszulNormalization::plain, scalar_module);
  const auto& C = *cat;
  const int nn = static_cast<int>(n);
  const std::size_t max_arity = static_cast<std::size_t>(2 * window + nn + 2);
  KeyPred any = [](const CochainKey&) { return true; };

  for (char kind : {'A', 'B'}) {
    KeyPred pure = [&C, kind](const CochainKey& key) { return all_kind(C, key, kind); };
    for (int t = -nn; t <= window - 1; ++t) {
      // pieces X^{d}, Y^{d} for d = dmin-1 .. dmax+1
      const int dmin = -1, dmax = nn;
      std::map<int, CochainBasis> X, Y;
      for (int d = dmin - 2; d <= dmax + 1; ++d) {
        X[d] = piece(C, max_arity, window, d, t, any);
        Y[d] = piece(C, max_arity, window, d, t, pure);
      }
      // rank of the cone differential C^d -> C^{d+1}
      auto cone_rank = [&](int d) -> std::size_t {
        SparseMatrix dx = differential_matrix(cat, X[d], X[d + 1], window, any);
        SparseMatrix p = assemble(cat, X[d], Y[d], window, [&](const Cochain& c) { return filtered(c, pure); });
        SparseMatrix dy = differential_matrix(cat, Y[d - 1], Y[d], window, pure);
        SparseMatrix m(X[d + 1].size() + Y[d].size(), X[d].size() + Y[d - 1].size());
        for (std::size_t r = 0; r < dx.rows(); ++r)
          for (const auto& [c, v] : dx.row_vec(r)) m.add(r, c, v);
        for (std::size_t r = 0; r < p.rows(); ++r)
          for (const auto& [c, v] : p.row_vec(r)) m.add(X[d + 1].size() + r, c, v);
        for (std::size_t r = 0; r < dy.rows(); ++r)
          for (const auto& [c, v] : dy.row_vec(r)) m.add(X[d + 1].size() + r, X[d].size() + c, -v);
        return rank(m);
      };
      std::map<int, std::size_t> ranks;
      for (int d = dmin - 1; d <= dmax; ++d) ranks[d] = cone_rank(d);
      for (int d = dmin; d <= dmax; ++d) {
        ConeEntry e;
        e.projection = kind == 'A' ? "p_A" : "p_B";
        e.degree = d;
        e.inner = t;
        e.cone_dim = X[d].size() + Y[d - 1].size() - ranks[d] - ranks[d - 1];
        e.pass = e.cone_dim == 0;
        rep.pass = rep.pass && e.pass;
        rep.entries.push_back(e);
      }
    }
  }
  return rep;
}

}  // namespace koszulq
