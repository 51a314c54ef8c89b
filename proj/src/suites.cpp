#include "koszulq/suites.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "koszulq/category.hpp"
#include "koszulq/cochain.hpp"
#include "koszulq/errors.hpp"
#include "koszulq/hochschild.hpp"
#include "koszulq/keller.hpp"
#include "koszulq/linalg.hpp"
#include "koszulq/quadalg.hpp"
#include "koszulq/superpoly.hpp"

namespace koszulq {

namespace {

using json = nlohmann::json;
using SP = SuperPolynomial;
using Cat = std::shared_ptr<const GradedCategory>;

// Collects cases; the first failure becomes the counterexample.
class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::function<json()>& witness) {
    ++r_.cases;
    if (!ok && first_.is_null()) first_ = witness();
  }
  void skip(json entry) {
    ++r_.skipped;
    entries_.push_back(std::move(entry));
  }
  void keep(json entry) { entries_.push_back(std::move(entry)); }

  SuiteResult done() {
    r_.pass = first_.is_null();
    if (!r_.pass) r_.counterexample = first_.dump();
    r_.entries = entries_.dump();
    return std::move(r_);
  }

 private:
  SuiteResult r_;
  json first_;
  json entries_ = json::array();
};

Rational fraction(int p, int q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SP random_homogeneous(std::mt19937& g, std::size_t n, unsigned s, unsigned k) {
  SP r(n);
  for (int t = 0; t < 3; ++t) {
    std::vector<unsigned> kappa(n, 0);
    for (unsigned a = 0; a < s; ++a) ++kappa[g() % n];
    std::vector<std::size_t> xs;
    for (unsigned a = 0; a < k; ++a) xs.push_back(1 + g() % n);
    r += SP::term(n, Rational(static_cast<int>(g() % 7) - 3), kappa, xs);
  }
  return r;
}

int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

struct GridPoint {
  std::size_t n;
  unsigned dS, dL;
};

std::vector<GridPoint> grid(std::size_t max_n, unsigned max_deg) {
  std::vector<GridPoint> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (unsigned dS = 0; dS <= max_deg; ++dS)
      for (unsigned dL = 0; dL <= std::min<unsigned>(max_deg, static_cast<unsigned>(n)); ++dL)
        out.push_back({n, dS, dL});
  return out;
}

Cochain random_keller(const Cat& cat, const std::vector<std::size_t>& arities, long cutoff, std::mt19937& rng,
                      double density, int max_shift) {
  auto basis = cochain_basis(*cat, arities, cutoff,
                             [&](const CochainKey& key) { return inner_shift(*cat, key) <= max_shift; });
  std::uniform_int_distribution<int> coef(-2, 2);
  std::bernoulli_distribution keep(density);
  Cochain c(cat, cutoff);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep(rng)) {
      int v = coef(rng);
      if (v != 0) c += basis.element(cat, i, cutoff) * Rational(v);
    }
  return c;
}

Cochain random_pure(const Cat& cat, char kind, const std::vector<std::size_t>& arities, long cutoff,
                    std::mt19937& rng) {
  auto basis = cochain_basis(*cat, arities, cutoff, [&](const CochainKey& key) {
    if (cat->blocks[key.tgt].kind != kind) return false;
    return std::all_of(key.src.begin(), key.src.end(), [&](int b) { return cat->blocks[b].kind == kind; });
  });
  std::uniform_int_distribution<int> coef(-2, 2);
  std::bernoulli_distribution keep(0.2);
  Cochain c(cat, cutoff);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep(rng)) c += basis.element(cat, i, cutoff) * Rational(coef(rng));
  return c;
}

json point_json(const GridPoint& p) { return {{"n", p.n}, {"degS", p.dS}, {"degL", p.dL}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string SuiteReport::to_json() const {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["report"] = report;
  j["pass"] = pass;
  j["suites"] = json::array();
  for (const auto& s : suites)
    j["suites"].push_back({{"name", s.name},
                           {"pass", s.pass},
                           {"cases", s.cases},
                           {"skipped", s.skipped},
                           {"counterexample", s.counterexample.empty() ? json(nullptr) : json::parse(s.counterexample)},
                           {"entries", json::parse(s.entries)}});
  return j.dump(2);
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  for (const auto& s : suites) {
    out << s.name << ": " << (s.pass ? "pass" : "FAIL") << " (" << s.cases << " cases";
    if (s.skipped) out << ", " << s.skipped << " skipped";
    out << ")\n";
    if (!s.pass) out << "  counterexample: " << s.counterexample << "\n";
  }
  out << report << ": " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

SuiteResult suite_exactcore(unsigned seed) {
  Tally t("exactcore");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + rng() % 6, c = 2 + rng() % 6;
    SparseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) m.add(i, j, fraction(val(rng), 1 + static_cast<int>(rng() % 3)));
    // low rank by construction: append sums of earlier rows
    if (r > 2) {
      SparseVec extra;
      for (std::size_t j = 0; j < c; ++j) {
        Rational s = m.at(0, j) + m.at(1, j) * 2;
        if (s != 0) extra.emplace_back(j, s);
      }
      m.append_row(extra);
    }
    const std::size_t a = rank(m), b = rank_rational(m), k = kernel_basis(m).size();
    t.check(a == b && a + k == m.cols(),
            [&] { return json{{"check", "rank"}, {"trial", trial}, {"fraction_free", a}, {"rational", b}}; });
  }
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(fraction(val(rng), 1 + static_cast<int>(rng() % 4)));
    if (cs[0] == 0) cs[0] = 1;
    TruncSeries s(2, cs);
    t.check(s * s.inverse() == TruncSeries(2, Rational(1)),
            [&] { return json{{"check", "inverse"}, {"series", s.to_string()}}; });
  }
  return t.done();
}

SuiteResult suite_classical_duality(std::size_t max_n, std::size_t inner) {
  Tally t("classical_duality");
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto S = QuadraticPresentation::symmetric(n);
    auto L = QuadraticPresentation::exterior(n);
    t.check(same_relations(quadratic_dual(S), L), [&] { return json{{"check", "dual of S"}, {"n", n}}; });
    t.check(same_relations(quadratic_dual(L), S), [&] { return json{{"check", "dual of Lambda"}, {"n", n}}; });
    for (const auto& [p, side] : {std::pair{&S, "S"}, std::pair{&L, "Lambda"}}) {
      auto h = koszul_acyclicity(koszul_complex(*p, inner), inner);
      t.check(h.koszul_up_to_cutoff && h.q_dims.at({0, 0}) == 1, [&] {
        json w{{"check", "koszul"}, {"side", side}, {"n", n}};
        for (const auto& [key, d] : h.q_dims)
          if (d != 0 && key != std::pair<std::size_t, std::size_t>{0, 0}) {
            w["i"] = key.first;
            w["m"] = key.second;
            w["q_dim"] = d;
            break;
          }
        return w;
      });
    }
  }
  return t.done();
}

SuiteResult suite_ext_diagonal(std::size_t n, std::size_t hom, std::size_t inner) {
  Tally t("ext_diagonal");
  for (const auto& [p, side] : {std::pair{QuadraticPresentation::symmetric(n), "S"},
                                std::pair{QuadraticPresentation::exterior(n), "Lambda"}}) {
    auto e = ext_dimensions_via_bar(p, hom, inner);
    json diag = json::array();
    for (std::size_t a = 0; a <= hom; ++a)
      for (long b = 0; b >= -static_cast<long>(inner); --b) {
        // partner dimensions: Lambda^a V for S, S^a V* for Lambda
        std::size_t want = 0;
        if (-b == static_cast<long>(a)) want = std::string(side) == "S" ? binomial(n, a) : binomial(n + a - 1, a);
        auto it = e.find({a, b});
        std::size_t got = it == e.end() ? 0 : it->second;
        t.check(it != e.end() && got == want, [&] {
          return json{{"side", side}, {"a", a}, {"b", b}, {"ext_dim", got}, {"expected", want}};
        });
        if (-b == static_cast<long>(a)) diag.push_back(got);
      }
    t.keep({{"side", side}, {"n", n}, {"diagonal", diag}});
  }
  return t.done();
}

SuiteResult suite_polyvector(std::size_t max_n, std::size_t cases_per_n, unsigned seed) {
  Tally t("polyvector");
  std::mt19937 g(seed);
  for (std::size_t n = 1; n <= max_n; ++n)
    for (std::size_t c = 0; c < cases_per_n; ++c) {
      auto a = random_homogeneous(g, n, g() % 3, g() % 3);
      auto b = random_homogeneous(g, n, g() % 3, g() % 3);
      auto d = random_homogeneous(g, n, g() % 3, g() % 3);
      const int ka = a.lambda_degree(), kb = b.lambda_degree(), kd = d.lambda_degree();
      auto jac = parity_sign((ka - 1) * (kd - 1)) * schouten(schouten(a, b), d) +
                 parity_sign((kb - 1) * (ka - 1)) * schouten(schouten(b, d), a) +
                 parity_sign((kd - 1) * (kb - 1)) * schouten(schouten(d, a), b);
      auto leib = schouten(a, wedge(b, d)) - wedge(schouten(a, b), d) -
                  parity_sign((ka - 1) * kb) * wedge(b, schouten(a, d));
      auto witness = [&](const char* what) {
        return [&, what] { return json{{"check", what}, {"a", a.to_string()}, {"b", b.to_string()}, {"c", d.to_string()}}; };
      };
      t.check(jac.is_zero(), witness("jacobi"));
      t.check(leib.is_zero(), witness("leibniz"));
      t.check(schouten(a, b) == -parity_sign((ka - 1) * (kb - 1)) * schouten(b, a), witness("antisymmetry"));
      t.check(duality_map(schouten(a, b)) == schouten(duality_map(a), duality_map(b)), witness("duality morphism"));
    }
  for (std::size_t n = 2; n <= std::max<std::size_t>(2, max_n); ++n)
    for (int c = 0; c < 40; ++c) {
      SP alpha(n);
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
          std::vector<unsigned> kappa(n, 0);
          ++kappa[i - 1];
          ++kappa[j - 1];
          alpha += SP::term(n, Rational(static_cast<int>(g() % 5) - 2), kappa, {i, j});
        }
      if (c % 2 == 1) alpha += random_homogeneous(g, n, 2, 2);
      if (alpha.is_zero() || !is_poisson(alpha)) continue;
      auto D = duality_map(alpha);
      t.check(is_poisson(D) && is_quadratic_bivector(D) && duality_map(D) == alpha,
              [&] { return json{{"check", "D preserves quadratic Poisson"}, {"alpha", alpha.to_string()}}; });
    }
  return t.done();
}

SuiteResult suite_hkr(std::size_t max_n, unsigned max_deg, long cutoff) {
  Tally t("hkr");
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto S = symmetric_category(n, cutoff + 2 * static_cast<long>(max_deg) + 1);
    std::vector<SP> gs;
    for (const auto& p : grid(max_n, max_deg))
      if (p.n == n) gs.push_back(grid_gamma(n, p.dS, p.dL));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto h = hkr(S, gs[i], cutoff);
      t.check(hoch_differential(h).is_zero(), [&] { return json{{"check", "cocycle"}, {"gamma", gs[i].to_string()}}; });
      for (std::size_t j = i; j < gs.size(); ++j) {
        Cochain b = hkr(S, gs[j], cutoff);
        Cochain br = gerstenhaber_bracket(h, b);
        int e = hkr_bracket_sign(gs[i].lambda_degree(), gs[j].lambda_degree());
        Cochain c = br - hkr(S, schouten(gs[i], gs[j]), cutoff).restricted(br.cutoff()) * Rational(e);
        std::optional<Cochain> w;
        if (hoch_differential(c).is_zero()) w = is_coboundary(c);
        t.check(w && hoch_differential(*w) == c, [&] {
          return json{{"check", "bracket"}, {"gamma1", gs[i].to_string()}, {"gamma2", gs[j].to_string()}, {"sign", e}};
        });
      }
    }
  }
  return t.done();
}

SuiteResult suite_star_product(const WeightAssignment& weights) {
  Tally t("star_product");
  std::vector<SP> held_out = {
      SP::term(3, Rational(1), {2, 0, 0}, {2, 3}) + SP::term(3, Rational(1), {0, 0, 2}, {1, 2}),
      SP::term(3, Rational(2), {1, 1, 0}, {1, 2}) + SP::term(3, Rational(-1), {0, 1, 1}, {2, 3}) +
          SP::term(3, Rational(5), {1, 0, 1}, {1, 3}),
      SP::term(2, Rational(3), {0, 2}, {1, 2}) + SP::term(2, Rational(-2), {1, 1}, {1, 2}),
  };
  for (const auto& a : held_out) {
    t.check(is_poisson(a), [&] { return json{{"check", "held-out bivector is Poisson"}, {"alpha", a.to_string()}}; });
    for (const auto& alpha : {a, duality_map(a)}) {
      StarProduct sp{alpha, weights, 2};
      auto w = star_product_defect(sp);
      t.check(!w, [&] {
        json j = json::parse(*w);
        j["alpha"] = alpha.to_string();
        return j;
      });
    }
    if (a.n() == 2) {
      auto cat = symmetric_category(2, 6);
      t.check(maurer_cartan_check(star_cochains({a, weights, 2}, cat, 3)),
              [&] { return json{{"check", "maurer-cartan"}, {"alpha", a.to_string()}}; });
    }
  }
  return t.done();
}

SuiteResult suite_keller_algebra(std::size_t n, unsigned seed) {
  Tally t("keller_algebra");
  std::mt19937 rng(seed);
  for (auto norm : {KoszulNormalization::plain, KoszulNormalization::normalized}) {
    auto cat = keller_category(n, 5, norm);
    for (int trial = 0; trial < 3; ++trial) {
      auto c = random_keller(cat, {0, 1, 2}, 3, rng, 0.05, 100);
      t.check(total_differential(total_differential(c)).is_zero(),
              [&] { return json{{"check", "total^2"}, {"trial", trial}}; });
    }
  }
  {
    auto cat = keller_category(n, 5);
    auto sym = symmetric_category(n, 5);
    auto ext = exterior_category(n);
    for (int trial = 0; trial < 3; ++trial) {
      auto c = random_keller(cat, {0, 1, 2}, 3, rng, 0.05, 100);
      t.check(project_A(total_differential(c), sym) == hoch_differential(project_A(c, sym)),
              [&] { return json{{"check", "p_A chain map"}, {"trial", trial}}; });
      t.check(project_B(total_differential(c), ext) == hoch_differential(project_B(c, ext)),
              [&] { return json{{"check", "p_B chain map"}, {"trial", trial}}; });
    }
  }
  auto cat = keller_category(n, 6);
  auto sym = symmetric_category(n, 6);
  auto ext = exterior_category(n);
  for (int trial = 0; trial < 2; ++trial) {
    auto f = random_keller(cat, {1, 2}, 4, rng, 0.03, 1) + embed(random_pure(sym, 'A', {2}, 4, rng), cat) +
             embed(random_pure(ext, 'B', {2}, 4, rng), cat);
    auto g = random_keller(cat, {0, 1}, 4, rng, 0.05, 1);
    auto h = random_keller(cat, {1}, 4, rng, 0.05, 1);
    auto w = [&](const char* what) { return [&, what] { return json{{"check", what}, {"trial", trial}}; }; };
    t.check(project_A(brace(f, {g}), sym) == brace(project_A(f, sym), {project_A(g, sym)}), w("p_A brace"));
    t.check(project_B(brace(f, {g}), ext) == brace(project_B(f, ext), {project_B(g, ext)}), w("p_B brace"));
    t.check(project_A(brace(f, {g, h}), sym) == brace(project_A(f, sym), {project_A(g, sym), project_A(h, sym)}),
            w("p_A double brace"));
    t.check(project_B(brace(f, {g, h}), ext) == brace(project_B(f, ext), {project_B(g, ext), project_B(h, ext)}),
            w("p_B double brace"));
    t.check(project_A(cup(f, h), sym) == cup(project_A(f, sym), project_A(h, sym)), w("p_A cup"));
    t.check(project_B(cup(f, h), ext) == cup(project_B(f, ext), project_B(h, ext)), w("p_B cup"));
  }
  return t.done();
}

SuiteResult suite_keller_admissibility(std::size_t max_n, long window) {
  Tally t("keller_admissibility");
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (bool scalar : {false, true}) {
      auto a = keller_admissibility(n, window, scalar);
      auto c = cone_acyclicity_check(n, window, scalar);
      // the scalar module is the negative control
      t.check(a.pass != scalar, [&] { return json::parse(a.to_json()); });
      t.check(c.pass != scalar, [&] { return json::parse(c.to_json()); });
      t.keep({{"n", n}, {"window", window}, {"scalar_module", scalar}, {"admissible", a.pass}, {"cone_acyclic", c.pass}});
    }
  }
  return t.done();
}

SuiteResult suite_sign_consistency(const SignTable& signs, std::size_t max_n, unsigned max_deg, std::size_t max_arity,
                                   long cutoff) {
  Tally t("sign_consistency");
  auto rep = resolve_sign_table(max_n, max_deg, max_arity, cutoff);
  t.check(rep.consistent, [&] { return json{{"check", "one sign per cell"}}; });
  for (const auto& r : rep.results) {
    int want = 0;
    try {
      want = signs.get(r.which, r.degS, r.degL);
    } catch (const UsageError&) {
    }
    t.check(r.observed && *r.observed != 0 && sgn(*r.observed) == want, [&] {
      json j = json::parse(r.to_json());
      j["table_sign"] = want;
      return j;
    });
  }
  for (const auto& [key, s] : rep.table.entries) {
    if (key.rfind("phi", 0) != 0) continue;
    auto it = signs.entries.find(key);
    t.check(it != signs.entries.end() && it->second == s, [&] {
      return json{{"key", key}, {"observed", s}, {"table_sign", it == signs.entries.end() ? 0 : it->second}};
    });
  }
  return t.done();
}

SuiteResult suite_identities(const SignTable& signs, std::size_t max_n, unsigned max_deg, std::size_t max_arity,
                             long cutoff) {
  Tally t("identities");
  for (const auto& p : grid(max_n, max_deg)) {
    auto g = grid_gamma(p.n, p.dS, p.dL);
    for (std::size_t m1 = 0; m1 <= max_arity; ++m1)
      for (std::size_t m2 = 0; m2 <= max_arity; ++m2)
        for (const char* which : {"i", "ii", "iii", "iv"}) {
          json where = point_json(p);
          where["which"] = which;
          where["m"] = m1;
          where["n_arity"] = m2;
          FgIdentityResult r;
          try {
            r = verify_fg_identity(g, m1, m2, which, cutoff);
          } catch (const UsageError& e) {
            where["skipped"] = true;
            where["reason"] = e.what();
            t.skip(where);
            continue;
          }
          int want = 0;
          try {
            want = signs.get(which, p.dS, p.dL);
          } catch (const UsageError&) {
          }
          json j = json::parse(r.to_json());
          j["table_sign"] = want;
          t.check(r.pass && r.sign == want, [&] { return j; });
          t.keep(j);
        }
  }
  return t.done();
}

SuiteResult suite_telescopes(const SignTable& signs, std::size_t max_n, unsigned max_deg, long cutoff) {
  Tally t("telescopes");
  for (const auto& p : grid(max_n, max_deg)) {
    auto r = telescope_check(grid_gamma(p.n, p.dS, p.dL), signs, false, cutoff);
    json j = json::parse(r.to_json());
    t.check(r.pass, [&] { return j; });
    t.keep(j);
  }
  return t.done();
}

SuiteResult suite_phi_cat_closure(const SignTable& signs, std::size_t max_n, unsigned max_deg, long cutoff) {
  Tally t("phi_cat_closure");
  for (const auto& p : grid(max_n, max_deg)) {
    auto r = phi_cat_check(grid_gamma(p.n, p.dS, p.dL), cutoff, signs, KoszulNormalization::normalized);
    json j = json::parse(r.to_json());
    t.check(r.closed, [&] { return j; });
    t.keep({{"gamma", r.gamma}, {"n", p.n}, {"degS", p.dS}, {"degL", p.dL}, {"closed", r.closed}});
  }
  return t.done();
}

SuiteResult suite_phi_cat_projections(const SignTable& signs, std::size_t max_n, unsigned max_deg, long cutoff) {
  Tally t("phi_cat_projections");
  for (const auto& p : grid(max_n, max_deg)) {
    auto r = phi_cat_check(grid_gamma(p.n, p.dS, p.dL), cutoff, signs, KoszulNormalization::normalized);
    json j = json::parse(r.to_json());
    t.check(r.pass_A && r.pass_B, [&] { return j; });
    t.keep(j);
  }
  return t.done();
}

SignTable load_sign_table(const RunConfig& config) {
  if (config.sign_table.empty()) return default_sign_table();
  return SignTable::from_json(read_file(config.sign_table));
}

SuiteReport verify_core(const RunConfig& config, const WeightAssignment& weights, const SignTable& signs) {
  config.validate();
  const std::size_t nn = std::min<std::size_t>(config.n, 2);
  const long window = static_cast<long>(std::min<std::size_t>(config.inner_cutoff, 3));
  SuiteReport rep;
  rep.report = "verify-core";
  rep.suites.push_back(suite_exactcore());
  rep.suites.push_back(suite_classical_duality(std::min<std::size_t>(config.n, 3), config.inner_cutoff));
  rep.suites.push_back(suite_ext_diagonal(std::min<std::size_t>(config.n, 3), config.hom_cutoff, config.inner_cutoff));
  rep.suites.push_back(suite_polyvector(std::min<std::size_t>(config.n, 3)));
  rep.suites.push_back(suite_hkr(nn, config.max_degree));
  rep.suites.push_back(suite_star_product(weights));
  rep.suites.push_back(suite_keller_algebra(nn));
  rep.suites.push_back(suite_keller_admissibility(nn, window));
  rep.suites.push_back(suite_sign_consistency(signs, nn, config.max_degree, config.arity_cutoff));
  rep.pass = std::all_of(rep.suites.begin(), rep.suites.end(), [](const SuiteResult& s) { return s.pass; });
  return rep;
}

SuiteReport verify_fg_battery(const RunConfig& config, const SignTable& signs) {
  config.validate();
  const std::size_t nn = std::min<std::size_t>(config.n, 2);
  const long window = static_cast<long>(std::min<std::size_t>(config.inner_cutoff, 3));
  SuiteReport rep;
  rep.report = "verify-section6";
  rep.suites.push_back(suite_identities(signs, nn, config.max_degree, config.arity_cutoff));
  rep.suites.push_back(suite_telescopes(signs, nn, config.max_degree));
  rep.suites.push_back(suite_phi_cat_closure(signs, nn, config.max_degree));
  rep.suites.push_back(suite_phi_cat_projections(signs, nn, config.max_degree));
  rep.suites.push_back(suite_keller_admissibility(nn, window));
  rep.pass = std::all_of(rep.suites.begin(), rep.suites.end(), [](const SuiteResult& s) { return s.pass; });
  return rep;
}

}  // namespace koszulq
