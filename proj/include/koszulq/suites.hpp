#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "koszulq/hkrcat.hpp"
#include "koszulq/pipeline.hpp"
#include "koszulq/starprod.hpp"

namespace koszulq {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  /// JSON of the first failing case, empty when the suite passed.
  std::string counterexample;
  /// JSON array of per-case entries (only for suites that keep them).
  std::string entries = "[]";
};

struct SuiteReport {
  std::string report;
  std::vector<SuiteResult> suites;
  bool pass = false;

  std::string to_json() const;
  std::string to_text() const;
};

/// Fraction-free rank against rational rank, and TruncSeries inverses, on
/// seeded random inputs.
SuiteResult suite_exactcore(unsigned seed = 1);
/// quadratic_dual(S(V*)) = Lambda(V) and both Koszul complexes acyclic off (0,0).
SuiteResult suite_classical_duality(std::size_t max_n = 3, std::size_t inner = 4);
/// Ext from the bar complex of S(V*) and Lambda(V) against the partner's graded dimensions.
SuiteResult suite_ext_diagonal(std::size_t n = 2, std::size_t hom = 3, std::size_t inner = 3);
/// Jacobi, Leibniz, antisymmetry, D a bracket morphism, D of quadratic Poisson
/// is quadratic Poisson, on seeded random polyvectors with n <= max_n.
SuiteResult suite_polyvector(std::size_t max_n = 3, std::size_t cases_per_n = 40, unsigned seed = 21);
/// d hkr(g) = 0 and [hkr g1, hkr g2] - e hkr([g1, g2]) = d(witness) over the grid.
SuiteResult suite_hkr(std::size_t max_n = 2, unsigned max_deg = 2, long cutoff = 3);
/// Held-out bivectors in both parities under one weight assignment, and the MC check.
SuiteResult suite_star_product(const WeightAssignment& weights);
/// total^2 = 0, projections are chain maps and respect cup and braces.
SuiteResult suite_keller_algebra(std::size_t n = 2, unsigned seed = 11);
/// keller_admissibility and cone_acyclicity_check for the classical triple
/// (must pass) and the scalar module (must fail).
SuiteResult suite_keller_admissibility(std::size_t max_n = 2, long window = 3);
/// Observed signs of the four F/G identities and of d_tot phi~ against `signs`.
SuiteResult suite_sign_consistency(const SignTable& signs, std::size_t max_n = 2, unsigned max_deg = 2,
                                   std::size_t max_arity = 2, long cutoff = 3);

/// The four identities with their stated scalars over the grid; arities
/// outside the degree hypotheses are skipped with the reason.
SuiteResult suite_identities(const SignTable& signs, std::size_t max_n, unsigned max_deg, std::size_t max_arity,
                             long cutoff = 3);
SuiteResult suite_telescopes(const SignTable& signs, std::size_t max_n, unsigned max_deg, long cutoff = 3);
/// d_tot phi^cat = 0 on the normalized category.
SuiteResult suite_phi_cat_closure(const SignTable& signs, std::size_t max_n, unsigned max_deg, long cutoff = 3);
/// p_A(phi^cat) = +-hkr(gamma), p_B(phi^cat) = +-phi~^Lambda / m!.
SuiteResult suite_phi_cat_projections(const SignTable& signs, std::size_t max_n, unsigned max_deg, long cutoff = 3);

/// The sign table named by the config, or the built-in one.
SignTable load_sign_table(const RunConfig& config);

SuiteReport verify_core(const RunConfig& config, const WeightAssignment& weights, const SignTable& signs);
SuiteReport verify_fg_battery(const RunConfig& config, const SignTable& signs);

}  // namespace koszulq
