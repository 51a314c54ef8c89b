#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "koszulq/pipeline.hpp"
#include "koszulq/quadalg.hpp"
#include "koszulq/suites.hpp"

using namespace koszulq;
using SP = SuperPolynomial;

namespace {

struct Outcome {
  bool pass = false;
  std::string note;
};

std::string failing(const SuiteReport& r) {
  std::string out;
  for (const auto& s : r.suites)
    if (!s.pass) out += (out.empty() ? "" : ", ") + s.name;
  return out;
}

Outcome from_suites(const std::vector<SuiteResult>& suites) {
  Outcome o{true, ""};
  std::size_t cases = 0;
  for (const auto& s : suites) {
    cases += s.cases;
    if (!s.pass) {
      o.pass = false;
      o.note += s.name + " " + s.counterexample + " ";
    }
  }
  if (o.pass) o.note = std::to_string(cases) + " cases";
  return o;
}

const WeightAssignment& weights() {
  static const WeightAssignment w = solve_weights(weight_training_set());
  return w;
}

RunConfig duality_config(const SP& alpha) {
  RunConfig c;
  c.n = alpha.n();
  c.N = 2;
  c.alpha = alpha;
  return c;
}

Outcome classical() { return from_suites({suite_classical_duality(3, 4)}); }

Outcome ext_diagonal() {
  auto o = from_suites({suite_ext_diagonal(2, 3, 3)});
  auto e = ext_dimensions_via_bar(QuadraticPresentation::symmetric(2), 3, 3);
  const std::size_t want[] = {1, 2, 1, 0};
  std::string diag;
  for (std::size_t a = 0; a <= 3; ++a) {
    auto it = e.find({a, -static_cast<long>(a)});
    std::size_t d = it == e.end() ? 0 : it->second;
    diag += (a ? "," : "") + std::to_string(d);
    if (d != want[a]) o.pass = false;
  }
  for (const auto& [key, d] : e)
    if (key.second != -static_cast<long>(key.first) && d != 0) o.pass = false;
  o.note = "S diagonal (" + diag + ") " + o.note;
  return o;
}

Outcome polyvector() {
  auto r = suite_polyvector(3, 40, 21);
  auto o = from_suites({r});
  if (o.pass && r.cases < 100) o = {false, "fewer than 100 cases"};
  return o;
}

Outcome hkr() { return from_suites({suite_hkr(2, 2, 3)}); }

Outcome star_product() { return from_suites({suite_star_product(weights())}); }

Outcome keller() { return from_suites({suite_keller_algebra(2, 11), suite_keller_admissibility(2, 3)}); }

Outcome identities() {
  RunConfig c;
  c.n = 2;
  c.arity_cutoff = 2;
  c.max_degree = 2;
  c.inner_cutoff = 3;
  auto r = verify_fg_battery(c, default_sign_table());
  return {r.pass, r.pass ? "all suites pass" : "failing: " + failing(r)};
}

Outcome duality() {
  SP n2 = SP::term(2, Rational(3), {1, 1}, {1, 2});
  SP n3 = SP::term(3, Rational(1), {1, 1, 0}, {1, 2}) + SP::term(3, Rational(2), {1, 0, 1}, {1, 3}) +
          SP::term(3, Rational(-1, 2), {0, 1, 1}, {2, 3});
  Outcome o{true, ""};
  for (const auto& alpha : {n2, n3}) {
    auto r = verify_duality(duality_config(alpha), weights());
    o.note += "n=" + std::to_string(alpha.n()) + " " + r.verdict + "; ";
    if (!r.pass) o.pass = false;
  }
  auto bad = weights();
  bad.weights["k2:v1->(L,R);v2->(L,R)"] += 1;
  auto r = verify_duality(duality_config(n2), bad);
  o.note += "corrupted weights " + r.verdict;
  if (r.pass) o.pass = false;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"classical Koszul duality, n <= 3, inner degree <= 4", 5, classical},
      {"Ext diagonal of S(V*) and Lambda(V), n = 2", 30, ext_diagonal},
      {"polyvector calculus suite", 10, polyvector},
      {"HKR cocycles and bracket up to coboundary", 60, hkr},
      {"order-2 star products and MC check", 60, star_product},
      {"Keller category, admissibility and negative control", 120, keller},
      {"F/G identities, telescopes, phi^cat", 120, identities},
      {"end-to-end duality at N = 2 and corrupted-weights control", 180, duality},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = criteria[i].run();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > criteria[i].budget_s) {
      o.pass = false;
      o.note += " (over the " + std::to_string(static_cast<int>(criteria[i].budget_s)) + " s budget)";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s  %s [%.2f s] %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, s,
                o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
