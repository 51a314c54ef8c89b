#include "koszulq/starprod.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "koszulq/category.hpp"
#include "koszulq/errors.hpp"
#include "koszulq/hochschild.hpp"
#include "koszulq/trunc_linalg.hpp"

namespace koszulq {

namespace {

std::string target_name(int t) {
  if (t == AdmissibleGraph::L) return "L";
  if (t == AdmissibleGraph::R) return "R";
  return "v" + std::to_string(t + 1);
}

int parse_target(const std::string& s) {
  if (s == "L") return AdmissibleGraph::L;
  if (s == "R") return AdmissibleGraph::R;
  if (s.size() >= 2 && s[0] == 'v') return std::stoi(s.substr(1)) - 1;
  throw UsageError("graph key: bad target '" + s + "'");
}

using Flavor = SuperPolynomial::Flavor;

void check_same_space(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (a.n() != b.n() || a.flavor() != b.flavor()) throw UsageError("evaluate_graph: mismatched generator sets");
}

// Monomials of degree d in the coordinate slots of the flavour.
std::vector<SuperPolynomial> coordinate_monomials(std::size_t n, Flavor fl, unsigned d) {
  std::vector<SuperPolynomial> out;
  if (fl == Flavor::standard) {
    for (auto& e : exponent_vectors(n, d)) out.push_back(SuperPolynomial::term(n, Rational(1), e, {}, fl));
  } else {
    for (auto& L : subsets(n, d)) {
      SuperPolynomial m = SuperPolynomial::constant(n, Rational(1), fl);
      for (auto i : L) m = wedge(m, SuperPolynomial::x(n, i, fl));
      out.push_back(m);
    }
  }
  return out;
}

// B_Gamma on monomials, memoized and extended bilinearly.
class GraphCache {
 public:
  GraphCache(const std::vector<AdmissibleGraph>& graphs, const SuperPolynomial& alpha) : graphs_(graphs), alpha_(alpha) {}

  SuperPolynomial apply(std::size_t gi, const SuperPolynomial& f, const SuperPolynomial& h) {
    SuperPolynomial out(alpha_.n(), alpha_.flavor());
    auto par = f.poly().parity_ptr();
    for (const auto& [mf, cf] : f.poly().terms())
      for (const auto& [mh, ch] : h.poly().terms()) {
        auto key = std::make_tuple(gi, mf, mh);
        auto it = memo_.find(key);
        if (it == memo_.end()) {
          SuperPolynomial a(alpha_.n(), alpha_.flavor(), SPoly::monomial(par, mf, Rational(1)));
          SuperPolynomial b(alpha_.n(), alpha_.flavor(), SPoly::monomial(par, mh, Rational(1)));
          it = memo_.emplace(key, evaluate_graph(graphs_[gi], alpha_, a, b)).first;
        }
        out += it->second * (cf * ch);
      }
    return out;
  }

 private:
  const std::vector<AdmissibleGraph>& graphs_;
  SuperPolynomial alpha_;
  std::map<std::tuple<std::size_t, Monomial, Monomial>, SuperPolynomial> memo_;
};

SeriesPoly zero_series(std::size_t n, Flavor fl, std::size_t order) {
  return SeriesPoly(order + 1, SuperPolynomial(n, fl));
}

}  // namespace

std::string AdmissibleGraph::key() const {
  std::ostringstream os;
  os << "k" << k << ":";
  for (std::size_t v = 0; v < edges.size(); ++v) {
    if (v) os << ";";
    os << "v" << v + 1 << "->(" << target_name(edges[v][0]) << "," << target_name(edges[v][1]) << ")";
  }
  return os.str();
}

bool AdmissibleGraph::has_loop() const {
  for (std::size_t v = 0; v < edges.size(); ++v)
    if (edges[v][0] == static_cast<int>(v) || edges[v][1] == static_cast<int>(v)) return true;
  return false;
}

AdmissibleGraph AdmissibleGraph::canonical() const {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  AdmissibleGraph best = *this;
  std::string best_key = key();
  do {
    AdmissibleGraph g;
    g.k = k;
    g.edges.resize(k);
    // vertex v becomes perm[v]
    for (std::size_t v = 0; v < k; ++v)
      for (int e = 0; e < 2; ++e) {
        int t = edges[v][e];
        g.edges[perm[v]][e] = t >= 0 ? perm[t] : t;
      }
    std::string kk = g.key();
    if (kk < best_key) {
      best_key = kk;
      best = g;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

AdmissibleGraph AdmissibleGraph::parse(const std::string& key) {
  auto colon = key.find(':');
  if (key.empty() || key[0] != 'k' || colon == std::string::npos) throw UsageError("graph key: '" + key + "'");
  AdmissibleGraph g;
  g.k = std::stoul(key.substr(1, colon - 1));
  g.edges.resize(g.k);
  std::string rest = key.substr(colon + 1);
  std::size_t v = 0;
  std::stringstream ss(rest);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    auto open = part.find('('), comma = part.find(','), close = part.find(')');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos || v >= g.k)
      throw UsageError("graph key: '" + key + "'");
    g.edges[v] = {parse_target(part.substr(open + 1, comma - open - 1)),
                  parse_target(part.substr(comma + 1, close - comma - 1))};
    ++v;
  }
  if (v != g.k) throw UsageError("graph key: wrong vertex count in '" + key + "'");
  return g;
}

std::vector<AdmissibleGraph> enumerate_graphs(std::size_t k, bool loops) {
  if (k > 2) throw UsageError("enumerate_graphs: orders above 2 are not supported");
  std::vector<int> targets = {AdmissibleGraph::L, AdmissibleGraph::R};
  for (std::size_t v = 0; v < k; ++v) targets.push_back(static_cast<int>(v));
  std::map<std::string, AdmissibleGraph> found;
  AdmissibleGraph g;
  g.k = k;
  g.edges.resize(k);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == k) {
      if (!loops && g.has_loop()) return;
      auto c = g.canonical();
      found.emplace(c.key(), c);
      return;
    }
    for (int a : targets)
      for (int b : targets) {
        if (a == b) continue;
        g.edges[v] = {a, b};
        rec(v + 1);
      }
  };
  rec(0);
  std::vector<AdmissibleGraph> out;
  for (auto& [key, gg] : found) out.push_back(gg);
  return out;
}

SuperPolynomial evaluate_graph(const AdmissibleGraph& g, const SuperPolynomial& alpha, const SuperPolynomial& f,
                               const SuperPolynomial& h) {
  check_same_space(alpha, f);
  check_same_space(alpha, h);
  if (g.edges.size() != g.k) throw UsageError("evaluate_graph: malformed graph");
  const std::size_t n = alpha.n();
  const std::size_t w = 2 * n;
  const std::size_t slots = g.k + 2;
  auto base = SuperPolynomial::parity_for(n, alpha.flavor());
  SPoly::Parity big;
  for (std::size_t s = 0; s < slots; ++s) big.insert(big.end(), base->begin(), base->end());
  auto bigp = std::make_shared<const SPoly::Parity>(std::move(big));

  auto embed = [&](const SuperPolynomial& p, std::size_t slot) {
    std::vector<long> target(w);
    for (std::size_t i = 0; i < w; ++i) target[i] = static_cast<long>(slot * w + i);
    return p.poly().rename(bigp, target);
  };
  auto slot_of = [&](int t) -> std::size_t {
    if (t == AdmissibleGraph::L) return g.k;
    if (t == AdmissibleGraph::R) return g.k + 1;
    return static_cast<std::size_t>(t);
  };

  SPoly P = SPoly::constant(bigp, Rational(1));
  for (std::size_t v = 0; v < g.k; ++v) P = P * embed(alpha, v);
  P = P * embed(f, g.k);
  P = P * embed(h, g.k + 1);
  for (std::size_t v = 0; v < g.k && !P.is_zero(); ++v)
    for (int e = 0; e < 2; ++e) {
      std::size_t t = slot_of(g.edges[v][e]);
      SPoly next(bigp);
      for (std::size_t a = 0; a < n; ++a) next += P.derivative(t * w + a).derivative(v * w + n + a);
      P = std::move(next);
    }
  std::vector<long> collapse(slots * w);
  for (std::size_t i = 0; i < collapse.size(); ++i) collapse[i] = static_cast<long>(i % w);
  return SuperPolynomial(n, alpha.flavor(), P.rename(base, collapse));
}

Rational WeightAssignment::weight(const AdmissibleGraph& g) const {
  auto it = weights.find(g.canonical().key());
  return it == weights.end() ? Rational(0) : it->second;
}

std::string WeightAssignment::to_json() const {
  nlohmann::json j;
  j["weights"] = nlohmann::json::object();
  for (const auto& [k, w] : weights) j["weights"][k] = koszulq::to_string(w);
  j["solution_dim"] = solution_dim;
  j["constraint_rows"] = constraint_rows;
  j["free_loops"] = free_loops;
  return j.dump(2);
}

WeightAssignment WeightAssignment::from_json(const std::string& text) {
  WeightAssignment w;
  auto j = nlohmann::json::parse(text);
  for (const auto& [k, v] : j.at("weights").items()) {
    auto g = AdmissibleGraph::parse(k);
    w.weights[g.canonical().key()] = parse_rational(v.get<std::string>());
  }
  w.solution_dim = j.value("solution_dim", std::size_t{0});
  w.constraint_rows = j.value("constraint_rows", std::size_t{0});
  w.free_loops = j.value("free_loops", true);
  return w;
}

WeightAssignment first_order_weights() {
  WeightAssignment w;
  AdmissibleGraph wedge_graph;
  wedge_graph.k = 1;
  wedge_graph.edges = {{AdmissibleGraph::L, AdmissibleGraph::R}};
  w.weights[wedge_graph.key()] = Rational(1, 2);
  return w;
}

WeightAssignment solve_weights(const std::vector<SuperPolynomial>& test_bivectors, const WeightOptions& opt) {
  WeightAssignment result = first_order_weights();
  result.free_loops = opt.free_loops;
  auto g1 = enumerate_graphs(1, true);
  auto g2all = enumerate_graphs(2, true);
  std::vector<AdmissibleGraph> unknowns;
  for (auto& g : g2all)
    if (opt.free_loops || !g.has_loop()) unknowns.push_back(g);
  std::vector<AdmissibleGraph> graphs = unknowns;
  std::vector<Rational> w1;
  for (auto& g : g1) {
    graphs.push_back(g);
    w1.push_back(result.weight(g));
  }
  const std::size_t m = unknowns.size();

  std::vector<SparseVec> rows;
  std::vector<Rational> rhs;
  auto add_rows = [&](const std::vector<SuperPolynomial>& coeff, const SuperPolynomial& constant) {
    std::map<Monomial, std::map<std::size_t, Rational>> by_mono;
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& [mono, c] : coeff[j].poly().terms()) by_mono[mono][j] += c;
    std::set<Monomial> all;
    for (auto& [mono, r] : by_mono) all.insert(mono);
    for (const auto& [mono, c] : constant.poly().terms()) all.insert(mono);
    for (const auto& mono : all) {
      SparseVec r;
      for (auto& [j, c] : by_mono[mono])
        if (!is_zero(c)) r.emplace_back(j, c);
      Rational b(0);
      auto it = constant.poly().terms().find(mono);
      if (it != constant.poly().terms().end()) b = -it->second;
      if (r.empty() && is_zero(b)) continue;
      rows.push_back(std::move(r));
      rhs.push_back(b);
    }
  };

  for (const auto& alpha0 : test_bivectors) {
    if (!is_quadratic_bivector(alpha0) || !is_poisson(alpha0))
      throw UsageError("solve_weights: test bivectors must be quadratic Poisson");
    std::vector<SuperPolynomial> alphas = {alpha0};
    if (opt.both_parities) alphas.push_back(duality_map(alpha0));
    for (const auto& alpha : alphas) {
      const std::size_t n = alpha.n();
      const Flavor fl = alpha.flavor();
      GraphCache cache(graphs, alpha);
      auto U1 = [&](const SuperPolynomial& a, const SuperPolynomial& b) {
        SuperPolynomial out(n, fl);
        for (std::size_t i = 0; i < g1.size(); ++i)
          if (!is_zero(w1[i])) out += cache.apply(m + i, a, b) * w1[i];
        return out;
      };
      std::vector<SuperPolynomial> monos;
      for (unsigned d = 1; d <= opt.degree; ++d)
        for (auto& mm : coordinate_monomials(n, fl, d)) monos.push_back(mm);
      const SuperPolynomial one = SuperPolynomial::constant(n, Rational(1), fl);
      for (const auto& f : monos) {
        std::vector<SuperPolynomial> left(m), right(m);
        for (std::size_t j = 0; j < m; ++j) {
          left[j] = cache.apply(j, one, f);
          right[j] = cache.apply(j, f, one);
        }
        add_rows(left, SuperPolynomial(n, fl));
        add_rows(right, SuperPolynomial(n, fl));
      }
      for (const auto& f : monos)
        for (const auto& g : monos)
          for (const auto& h : monos) {
            SuperPolynomial fg = wedge(f, g), gh = wedge(g, h);
            std::vector<SuperPolynomial> coeff(m);
            for (std::size_t j = 0; j < m; ++j)
              coeff[j] = wedge(cache.apply(j, f, g), h) + cache.apply(j, fg, h) - wedge(f, cache.apply(j, g, h)) -
                         cache.apply(j, f, gh);
            SuperPolynomial constant = U1(U1(f, g), h) - U1(f, U1(g, h));
            add_rows(coeff, constant);
          }
    }
  }

  SparseMatrix mat(rows.size(), m);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [j, c] : rows[r]) mat.add(r, j, c);
  auto sol = solve_linear(mat, rhs);
  if (!sol) throw StructuralError("solve_weights: associativity constraints are inconsistent");
  result.constraint_rows = rows.size();
  result.solution_dim = m - rank(mat);
  for (std::size_t j = 0; j < m; ++j)
    if (!is_zero((*sol)[j])) result.weights[unknowns[j].key()] = (*sol)[j];
  return result;
}

SeriesPoly star(const StarProduct& sp, const SuperPolynomial& f, const SuperPolynomial& h) {
  SeriesPoly fs = zero_series(sp.alpha.n(), sp.alpha.flavor(), 0);
  SeriesPoly hs = fs;
  fs[0] = f;
  hs[0] = h;
  return star(sp, fs, hs);
}

SeriesPoly star(const StarProduct& sp, const SeriesPoly& f, const SeriesPoly& h) {
  const std::size_t n = sp.alpha.n();
  const Flavor fl = sp.alpha.flavor();
  const std::size_t N = sp.order;
  if (N > 2) throw UsageError("star: orders above 2 are not supported");
  std::vector<std::vector<std::pair<AdmissibleGraph, Rational>>> by_k(N + 1);
  for (const auto& [key, w] : sp.weights.weights) {
    auto g = AdmissibleGraph::parse(key);
    if (g.k >= 1 && g.k <= N) by_k[g.k].emplace_back(g, w);
  }
  SeriesPoly out = zero_series(n, fl, N);
  for (std::size_t i = 0; i < f.size() && i <= N; ++i)
    for (std::size_t j = 0; j < h.size() && i + j <= N; ++j) {
      if (f[i].is_zero() || h[j].is_zero()) continue;
      check_same_space(sp.alpha, f[i]);
      check_same_space(sp.alpha, h[j]);
      out[i + j] += wedge(f[i], h[j]);
      for (std::size_t k = 1; i + j + k <= N; ++k)
        for (const auto& [g, w] : by_k[k]) out[i + j + k] += evaluate_graph(g, sp.alpha, f[i], h[j]) * w;
    }
  return out;
}

SeriesPoly associativity_defect(const StarProduct& sp, const SuperPolynomial& f, const SuperPolynomial& g,
                                const SuperPolynomial& h) {
  SeriesPoly fs = zero_series(sp.alpha.n(), sp.alpha.flavor(), 0), gs = fs, hs = fs;
  fs[0] = f;
  gs[0] = g;
  hs[0] = h;
  SeriesPoly a = star(sp, star(sp, fs, gs), hs);
  SeriesPoly b = star(sp, fs, star(sp, gs, hs));
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

bool series_is_zero(const SeriesPoly& s) {
  return std::all_of(s.begin(), s.end(), [](const SuperPolynomial& p) { return p.is_zero(); });
}

SuperPolynomial star_generator(const StarProduct& sp, std::size_t i) {
  return SuperPolynomial::x(sp.alpha.n(), i, sp.alpha.flavor());
}

QuadraticPresentation presentation_from_star(const StarProduct& sp) {
  if (!sp.alpha.is_zero()) {
    // The dual side carries D(alpha); both are quadratic bivectors in their own flavour.
    SuperPolynomial std_alpha = sp.odd() ? duality_map(sp.alpha) : sp.alpha;
    if (!is_quadratic_bivector(std_alpha)) throw UsageError("presentation_from_star: alpha is not quadratic");
  }
  const std::size_t n = sp.alpha.n();
  const std::size_t N = sp.order;
  std::vector<SeriesPoly> products(n * n);
  std::map<Monomial, std::size_t> mono_index;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      products[i * n + j] = star(sp, star_generator(sp, i + 1), star_generator(sp, j + 1));
      for (const auto& p : products[i * n + j])
        for (const auto& [mono, c] : p.poly().terms()) mono_index.emplace(mono, 0);
    }
  std::size_t idx = 0;
  for (auto& [mono, i] : mono_index) i = idx++;
  TruncMatrix mat(mono_index.size(), n * n, N);
  for (std::size_t col = 0; col < n * n; ++col) {
    std::map<std::size_t, TruncSeries> entries;
    for (std::size_t k = 0; k <= N && k < products[col].size(); ++k)
      for (const auto& [mono, c] : products[col][k].poly().terms()) {
        auto [it, ins] = entries.try_emplace(mono_index[mono], N);
        it->second[k] += c;
      }
    for (auto& [r, v] : entries) mat.add(r, col, v);
  }
  QuadraticPresentation p;
  p.trunc = N;
  for (std::size_t i = 1; i <= n; ++i) {
    p.names.push_back((sp.odd() ? "xi" : "x") + std::to_string(i));
    p.parity.push_back(sp.odd() ? 1 : 0);
  }
  p.relations = trunc_kernel(mat);
  return p;
}

std::vector<Cochain> star_cochains(const StarProduct& sp, const std::shared_ptr<const GradedCategory>& cat,
                                   long cutoff) {
  if (sp.odd()) throw UsageError("star_cochains: only the even parity has a cochain carrier");
  if (cat->n != sp.alpha.n()) throw UsageError("star_cochains: dimension mismatch");
  std::vector<Cochain> pi;
  pi.emplace_back(cat, cutoff);
  for (std::size_t k = 1; k <= sp.order; ++k) {
    std::vector<std::pair<AdmissibleGraph, Rational>> gs;
    for (const auto& [key, w] : sp.weights.weights) {
      auto g = AdmissibleGraph::parse(key);
      if (g.k == k) gs.emplace_back(g, w);
    }
    pi.push_back(polynomial_cochain(cat, 'A', 2, cutoff, [&](const std::vector<SuperPolynomial>& fs) {
      SuperPolynomial out(sp.alpha.n());
      for (const auto& [g, w] : gs) out += evaluate_graph(g, sp.alpha, fs[0], fs[1]) * w;
      return out;
    }));
  }
  return pi;
}

}  // namespace koszulq
