#include "koszulq/pipeline.hpp"

#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "koszulq/errors.hpp"

namespace koszulq {

namespace {

using json = nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json series_json(const TruncSeries& s) {
  json a = json::array();
  for (const auto& c : s.coeffs()) a.push_back(to_string(c));
  return a;
}

TruncSeries truncated(const TruncSeries& s, std::size_t k) { return TruncSeries(k, s.coeffs()); }

TruncVec truncated(const TruncVec& v, std::size_t k) {
  TruncVec out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(truncated(s, k));
  return out;
}

TruncVec transport(const TruncVec& r, const TruncMatrix& g, std::size_t gens) {
  TruncVec out(r.size(), TruncSeries(g.order()));
  for (std::size_t i = 0; i < gens; ++i)
    for (std::size_t j = 0; j < gens; ++j) {
      const auto& c = r[i * gens + j];
      if (c.is_zero()) continue;
      for (std::size_t a = 0; a < gens; ++a) {
        auto ga = g.at(a, i);
        if (ga.is_zero()) continue;
        for (std::size_t b = 0; b < gens; ++b) {
          auto gb = g.at(b, j);
          if (!gb.is_zero()) out[a * gens + b] += ga * gb * c;
        }
      }
    }
  return out;
}

TruncMatrix identity_matrix(std::size_t g, std::size_t order) {
  TruncMatrix m(g, g, order);
  for (std::size_t i = 0; i < g; ++i) m.add(i, i, TruncSeries(order, Rational(1)));
  return m;
}

json matrix_json(const TruncMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(series_json(m.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

StageResult stage(int k, const std::string& name, bool pass, json detail) {
  StageResult s;
  s.stage = k;
  s.name = name;
  s.pass = pass;
  s.detail = detail.dump();
  return s;
}

StageResult skipped(int k, const std::string& name, const std::string& reason) {
  StageResult s;
  s.stage = k;
  s.name = name;
  s.pass = true;
  s.skipped = true;
  s.detail = json{{"reason", reason}}.dump();
  return s;
}

// Monomials of degree 1 and 2 in the generators of the star product.
std::vector<SuperPolynomial> test_functions(const StarProduct& sp) {
  const std::size_t n = sp.alpha.n();
  std::vector<SuperPolynomial> fs;
  for (std::size_t i = 1; i <= n; ++i) fs.push_back(star_generator(sp, i));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = sp.odd() ? i + 1 : i; j <= n; ++j)
      fs.push_back(wedge(star_generator(sp, i), star_generator(sp, j)));
  return fs;
}

std::optional<json> gate(const StarProduct& sp, const std::string& side) {
  auto fs = test_functions(sp);
  SuperPolynomial one = SuperPolynomial::constant(sp.alpha.n(), Rational(1), sp.alpha.flavor());
  for (const auto& f : fs) {
    auto l = star(sp, one, f), r = star(sp, f, one);
    for (std::size_t k = 0; k < l.size(); ++k) {
      SuperPolynomial want = k == 0 ? f : SuperPolynomial(f.n(), f.flavor());
      if (!(l[k] == want) || !(r[k] == want))
        return json{{"side", side}, {"check", "unit"}, {"f", f.to_string()}, {"order", k}};
    }
  }
  auto degree = [](const SuperPolynomial& p) {
    long d = -1;
    for (const auto& [m, c] : p.poly().terms()) {
      long s = 0;
      for (auto e : m) s += e;
      if (d >= 0 && s != d) return -2L;
      d = s;
    }
    return d;
  };
  for (const auto& f : fs)
    for (const auto& g : fs) {
      auto s = star(sp, f, g);
      for (std::size_t k = 0; k < s.size(); ++k) {
        long d = degree(s[k]);
        if (d != -1 && d != degree(f) + degree(g))
          return json{{"side", side}, {"check", "grading"}, {"f", f.to_string()}, {"g", g.to_string()}, {"order", k}};
      }
    }
  for (const auto& f : fs)
    for (const auto& g : fs)
      for (const auto& h : fs) {
        auto d = associativity_defect(sp, f, g, h);
        for (std::size_t k = 0; k < d.size(); ++k)
          if (!d[k].is_zero())
            return json{{"side", side},
                        {"check", "associativity"},
                        {"triple", {f.to_string(), g.to_string(), h.to_string()}},
                        {"order", k},
                        {"defect", d[k].to_string()}};
      }
  return std::nullopt;
}

std::optional<json> koszul_witness(const KoszulCohomology& h) {
  for (const auto& [key, dim] : h.q_dims) {
    if (key == std::pair<std::size_t, std::size_t>{0, 0}) continue;
    if (dim != 0) return json{{"homological", key.first}, {"inner", key.second}, {"q_dim", dim}};
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> star_product_defect(const StarProduct& sp) {
  auto w = gate(sp, sp.odd() ? "Lambda" : "S");
  if (!w) return std::nullopt;
  return w->dump();
}

std::string polyvector_to_json(const SuperPolynomial& p) {
  const std::size_t n = p.n();
  json j;
  j["n"] = n;
  if (p.flavor() == SuperPolynomial::Flavor::dual) j["flavor"] = "dual";
  j["terms"] = json::array();
  for (const auto& [m, c] : p.poly().terms()) {
    std::vector<unsigned> x(m.begin(), m.begin() + static_cast<long>(n));
    std::vector<std::size_t> xi;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned e = 0; e < m[n + i]; ++e) xi.push_back(i + 1);
    j["terms"].push_back({{"coef", to_string(c)}, {"x", x}, {"xi", xi}});
  }
  return j.dump();
}

SuperPolynomial polyvector_from_json(const std::string& text) {
  auto j = parse_json(text, "polyvector");
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    auto flavor = j.value("flavor", std::string("standard"));
    if (flavor != "standard" && flavor != "dual") throw UsageError("polyvector: flavor must be standard or dual");
    auto fl = flavor == "dual" ? SuperPolynomial::Flavor::dual : SuperPolynomial::Flavor::standard;
    SuperPolynomial p(n, fl);
    for (const auto& t : j.value("terms", json::array())) {
      auto x = t.at("x").get<std::vector<unsigned>>();
      auto xi = t.value("xi", std::vector<std::size_t>{});
      if (x.size() != n) throw UsageError("polyvector: x must have n entries");
      for (auto i : xi)
        if (i < 1 || i > n) throw UsageError("polyvector: xi index out of range");
      p += SuperPolynomial::term(n, parse_rational(t.at("coef").get<std::string>()), x, xi, fl);
    }
    return p;
  } catch (const json::exception& e) {
    throw UsageError(std::string("polyvector: ") + e.what());
  }
}

std::string presentation_to_json(const QuadraticPresentation& p) {
  json j;
  j["names"] = p.names;
  j["parity"] = p.parity;
  j["trunc"] = p.trunc ? json(*p.trunc) : json(nullptr);
  j["relations"] = json::array();
  for (const auto& r : p.relations) {
    json terms = json::array();
    for (std::size_t w = 0; w < r.size(); ++w)
      if (!r[w].is_zero()) terms.push_back({{"word", word_name(p, w, 2)}, {"coeffs", series_json(r[w])}});
    j["relations"].push_back(terms);
  }
  return j.dump(2);
}

QuadraticPresentation presentation_from_json(const std::string& text) {
  auto j = parse_json(text, "presentation");
  try {
    QuadraticPresentation p;
    p.names = j.at("names").get<std::vector<std::string>>();
    p.parity = j.at("parity").get<std::vector<int>>();
    if (!j.at("trunc").is_null()) p.trunc = j.at("trunc").get<std::size_t>();
    std::map<std::string, std::size_t> words;
    for (std::size_t w = 0; w < p.g() * p.g(); ++w) words[word_name(p, w, 2)] = w;
    for (const auto& rel : j.at("relations")) {
      TruncVec v(p.g() * p.g(), TruncSeries(p.order()));
      for (const auto& t : rel) {
        auto it = words.find(t.at("word").get<std::string>());
        if (it == words.end()) throw UsageError("presentation: unknown word " + t.at("word").get<std::string>());
        std::vector<Rational> cs;
        for (const auto& c : t.at("coeffs")) cs.push_back(parse_rational(c.get<std::string>()));
        if (cs.size() != p.order() + 1) throw UsageError("presentation: coefficient list has the wrong length");
        v[it->second] = TruncSeries(p.order(), cs);
      }
      p.relations.push_back(std::move(v));
    }
    validate(p);
    return p;
  } catch (const json::exception& e) {
    throw UsageError(std::string("presentation: ") + e.what());
  }
}

RunConfig RunConfig::from_json(const std::string& text) {
  auto j = parse_json(text, "config");
  if (!j.is_object()) throw UsageError("config: expected an object");
  RunConfig c;
  try {
    c.n = j.value("n", c.n);
    c.N = j.value("N", c.N);
    if (j.contains("cutoffs")) {
      const auto& k = j.at("cutoffs");
      c.inner_cutoff = k.value("inner", c.inner_cutoff);
      c.hom_cutoff = k.value("hom", c.hom_cutoff);
      c.arity_cutoff = k.value("arity", c.arity_cutoff);
      c.max_degree = k.value("degree", c.max_degree);
    }
    c.weights = j.value("weights", c.weights);
    c.sign_table = j.value("sign_table", c.sign_table);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  c.alpha = j.contains("alpha") ? polyvector_from_json(j.at("alpha").dump()) : SuperPolynomial(c.n);
  c.validate();
  return c;
}

std::string RunConfig::to_json() const {
  json j;
  j["n"] = n;
  j["N"] = N;
  j["cutoffs"] = {{"inner", inner_cutoff}, {"hom", hom_cutoff}, {"arity", arity_cutoff}, {"degree", max_degree}};
  j["alpha"] = json::parse(polyvector_to_json(alpha));
  j["weights"] = weights;
  j["sign_table"] = sign_table;
  return j.dump(2);
}

void RunConfig::validate() const {
  if (n < 1) throw UsageError("config: n must be at least 1");
  if (N > 2) throw UsageError("config: N must be at most 2");
  if (inner_cutoff < 1) throw UsageError("config: inner cutoff must be at least 1");
  if (alpha.n() != n) throw UsageError("config: alpha lives in a different dimension");
  if (alpha.flavor() != SuperPolynomial::Flavor::standard) throw UsageError("config: alpha must be a standard polyvector");
  if (!alpha.is_zero() && !is_quadratic_bivector(alpha)) throw UsageError("config: alpha is not a quadratic bivector");
  if (!is_poisson(alpha)) throw UsageError("config: alpha is not Poisson");
}

std::vector<SuperPolynomial> weight_training_set() {
  return {SuperPolynomial::term(2, Rational(1), {1, 1}, {1, 2}), SuperPolynomial::term(2, Rational(1), {2, 0}, {1, 2})};
}

WeightAssignment load_weights(const RunConfig& config) {
  if (config.weights == "solve") return solve_weights(weight_training_set());
  auto text = read_file(config.weights);
  try {
    return WeightAssignment::from_json(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("weights: " + std::string(e.what()));
  }
}

Quantization quantize(const RunConfig& config, const WeightAssignment& weights) {
  config.validate();
  Quantization q{StarProduct{config.alpha, weights, config.N}, StarProduct{duality_map(config.alpha), weights, config.N},
                 {}, {}};
  if (config.alpha.is_zero()) q.odd.alpha = SuperPolynomial(config.n, SuperPolynomial::Flavor::dual);
  q.S = presentation_from_star(q.even);
  q.Lambda = presentation_from_star(q.odd);
  validate(q.S);
  validate(q.Lambda);
  return q;
}

QuadraticPresentation apply_generator_change(const QuadraticPresentation& p, const TruncMatrix& g) {
  if (g.rows() != p.g() || g.cols() != p.g() || g.order() != p.order())
    throw UsageError("apply_generator_change: matrix does not fit the presentation");
  QuadraticPresentation out = p;
  for (auto& r : out.relations) r = transport(r, g, p.g());
  return out;
}

namespace {

struct GaugeUnknown {
  std::size_t row, col, order;
};

// One linearized step at cur: finds x with
// transport(r, cur) + sum_u x_u h^{m_u} (E_u (x) cur + cur (x) E_u)(r) in I_target mod h^{k+1}.
bool gauge_step(const QuadraticPresentation& source, const QuadraticPresentation& target, TruncMatrix& cur,
                const std::vector<GaugeUnknown>& unknowns, std::size_t k) {
  const std::size_t g = source.g(), N = source.order(), dim = g * g;
  std::vector<TruncVec> gens;
  for (const auto& r : target.relations) gens.push_back(truncated(r, k));
  const Subspace T = submodule_span(gens, dim, k);
  const std::size_t block = dim * (k + 1);
  SparseMatrix M(block * source.relations.size(), unknowns.size());
  DenseVec rhs(M.rows());
  for (std::size_t s = 0; s < source.relations.size(); ++s) {
    const auto& r = source.relations[s];
    const auto base = transport(r, cur, g);
    for (const auto& [idx, v] : T.echelon().reduce(flatten(truncated(base, k)))) rhs[s * block + idx] = -v;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      TruncSeries shift(N);
      shift[unknowns[u].order] = 1;
      TruncMatrix e(g, g, N);
      e.add(unknowns[u].row, unknowns[u].col, shift);
      TruncMatrix both = cur;
      both.add(unknowns[u].row, unknowns[u].col, shift);
      auto c = transport(r, both, g);
      const auto ee = transport(r, e, g);
      for (std::size_t a = 0; a < dim; ++a) c[a] -= base[a] + ee[a];
      for (const auto& [idx, v] : T.echelon().reduce(flatten(truncated(c, k)))) M.add(s * block + idx, u, v);
    }
  }
  auto x = solve_linear(M, rhs);
  if (!x) return false;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if ((*x)[u] == 0) continue;
    TruncSeries e(N);
    e[unknowns[u].order] = (*x)[u];
    cur.add(unknowns[u].row, unknowns[u].col, e);
  }
  return true;
}

std::vector<GaugeUnknown> gauge_unknowns(const QuadraticPresentation& p, std::size_t lo, std::size_t hi) {
  std::vector<GaugeUnknown> out;
  for (std::size_t m = lo; m <= hi; ++m)
    for (std::size_t j = 0; j < p.g(); ++j)
      for (std::size_t i = 0; i < p.g(); ++i)
        if (p.parity[j] == p.parity[i]) out.push_back({j, i, m});
  return out;
}

}  // namespace

std::optional<TruncMatrix> gauge_search(const QuadraticPresentation& source, const QuadraticPresentation& target) {
  if (source.g() != target.g() || source.order() != target.order() || source.parity != target.parity)
    throw UsageError("gauge_search: presentations have different generators or rings");
  const std::size_t g = source.g(), N = source.order();
  auto done = [&](const TruncMatrix& m) { return same_relations(apply_generator_change(source, m), target); };
  // joint step over all orders, then order-by-order corrections of the
  // quadratic remainder; plain order-by-order from the identity as fallback
  for (bool joint : {true, false}) {
    TruncMatrix cur = identity_matrix(g, N);
    bool ok = true;
    if (joint && N > 0) ok = gauge_step(source, target, cur, gauge_unknowns(source, 1, N), N);
    for (std::size_t k = joint ? 2 : 1; ok && k <= N; ++k)
      ok = gauge_step(source, target, cur, gauge_unknowns(source, k, k), k);
    if (ok && done(cur)) return cur;
  }
  return std::nullopt;
}

std::string DualityReport::to_json() const {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["report"] = "verify-duality";
  j["verdict"] = verdict;
  j["pass"] = pass;
  j["passed_at_stage"] = passed_at;
  j["stages"] = json::array();
  for (const auto& s : stages)
    j["stages"].push_back({{"stage", s.stage},
                           {"name", s.name},
                           {"pass", s.pass},
                           {"skipped", s.skipped},
                           {"detail", json::parse(s.detail)}});
  return j.dump(2);
}

std::string DualityReport::to_text() const {
  std::ostringstream out;
  for (const auto& s : stages) {
    out << "stage " << s.stage << " " << s.name << ": " << (s.skipped ? "skipped" : s.pass ? "pass" : "FAIL");
    if (!s.pass || s.skipped) out << " " << s.detail;
    out << "\n";
  }
  out << "verdict: " << verdict << "\n";
  return out.str();
}

DualityReport verify_duality(const RunConfig& config, const WeightAssignment& weights) {
  DualityReport rep;
  auto refute = [&](StageResult s) {
    rep.verdict = "refuted at stage " + std::to_string(s.stage);
    rep.stages.push_back(std::move(s));
    return rep;
  };

  Quantization q;
  try {
    q = quantize(config, weights);
  } catch (const StructuralError& e) {
    return refute(stage(1, "quantize", false, {{"error", e.what()}}));
  }
  for (const auto& [sp, side] : {std::pair{&q.even, "S"}, std::pair{&q.odd, "Lambda"}}) {
    if (auto w = gate(*sp, side)) return refute(stage(1, "quantize", false, *w));
  }
  rep.stages.push_back(stage(1, "quantize", true,
                             {{"S", json::parse(presentation_to_json(q.S))},
                              {"Lambda", json::parse(presentation_to_json(q.Lambda))}}));

  const std::size_t D = config.inner_cutoff;
  json koszul;
  for (const auto& [p, side] : {std::pair{&q.S, "S"}, std::pair{&q.Lambda, "Lambda"}}) {
    auto h = koszul_acyclicity(koszul_complex(*p, D), D);
    if (!h.koszul_up_to_cutoff) {
      json w = koszul_witness(h).value_or(json{{"h00", h.q_dims[{0, 0}]}});
      w["side"] = side;
      return refute(stage(2, "koszul", false, w));
    }
    koszul[side] = {{"inner_cutoff", D}, {"h00", h.q_dims[{0, 0}]}};
  }
  rep.stages.push_back(stage(2, "koszul", true, koszul));

  auto dual = quadratic_dual(q.S);
  auto opp = opposite(q.Lambda);
  if (dual.names != opp.names || dual.parity != opp.parity || dual.order() != opp.order())
    return refute(stage(3, "dualize", false, {{"dual_names", dual.names}, {"opposite_names", opp.names}}));
  rep.stages.push_back(stage(3, "dualize", true,
                             {{"dual_of_S", json::parse(presentation_to_json(dual))},
                              {"opposite_of_Lambda", json::parse(presentation_to_json(opp))}}));

  if (submodule_equal(dual.relations, opp.relations)) {
    rep.stages.push_back(stage(4, "compare", true, {{"strict", true}}));
    rep.stages.push_back(skipped(5, "gauge", "relation modules already equal"));
    rep.passed_at = 4;
  } else {
    rep.stages.push_back(stage(4, "compare", false, {{"strict", false}}));
    auto g = gauge_search(dual, opp);
    if (!g) return refute(stage(5, "gauge", false, {{"reason", "no generator change = id mod h found"}}));
    rep.stages.push_back(stage(5, "gauge", true, {{"matrix", matrix_json(*g)}}));
    rep.passed_at = 5;
  }

  const std::size_t H = config.hom_cutoff;
  json ext = json::array();
  for (const auto& [p, partner, side] :
       {std::tuple{&q.S, &q.Lambda, "S"}, std::tuple{&q.Lambda, &q.S, "Lambda"}}) {
    auto e = ext_dimensions_via_bar(*p, H, D);
    for (const auto& [key, dim] : e) {
      const auto [a, b] = key;
      std::size_t want = -b == static_cast<long>(a) ? graded_component(*partner, a).q_dim : 0;
      json entry = {{"side", side}, {"a", a}, {"b", b}, {"ext_q_dim", dim}, {"expected", want}};
      if (dim != want) return refute(stage(6, "ext", false, entry));
      if (dim != 0) ext.push_back(entry);
    }
  }
  rep.stages.push_back(stage(6, "ext", true, {{"hom_cutoff", H}, {"inner_cutoff", D}, {"nonzero", ext}}));
  rep.pass = true;
  rep.verdict = "PASS";
  return rep;
}

}  // namespace koszulq
