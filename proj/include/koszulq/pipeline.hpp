#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "koszulq/quadalg.hpp"
#include "koszulq/starprod.hpp"
#include "koszulq/superpoly.hpp"
#include "koszulq/trunc_linalg.hpp"

namespace koszulq {

inline constexpr int kReportSchemaVersion = 1;

/// {"n": 2, "terms": [{"coef": "3/2", "x": [1, 1], "xi": [1, 2]}]}; x is the
/// exponent vector, xi the 1-based momentum indices in wedge order.
std::string polyvector_to_json(const SuperPolynomial& p);
SuperPolynomial polyvector_from_json(const std::string& text);

/// {"names", "parity", "trunc" (null over Q), "relations": [[{"word", "coeffs"}]]}.
std::string presentation_to_json(const QuadraticPresentation& p);
QuadraticPresentation presentation_from_json(const std::string& text);

struct RunConfig {
  std::size_t n = 2;
  std::size_t N = 2;
  /// Inner-degree window for Koszul complexes, cochain sources and Keller checks.
  std::size_t inner_cutoff = 3;
  /// Homological window of the Ext cross-check.
  std::size_t hom_cutoff = 2;
  /// Largest arity in the identity grids.
  std::size_t arity_cutoff = 2;
  /// Largest deg_S of the gamma grid.
  unsigned max_degree = 2;
  SuperPolynomial alpha{2};
  /// "solve" or a path to a WeightAssignment file.
  std::string weights = "solve";
  /// Empty means the built-in table.
  std::string sign_table;

  /// Throws UsageError on a malformed or invalid config (n = 0, N > 2,
  /// alpha not a quadratic Poisson bivector in n variables).
  static RunConfig from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
};

/// The fixed bivectors the order-2 weights are solved on.
std::vector<SuperPolynomial> weight_training_set();
/// Solves on the training set, or reads config.weights as a file.
WeightAssignment load_weights(const RunConfig& config);

struct Quantization {
  StarProduct even, odd;
  QuadraticPresentation S, Lambda;
};
/// Star products for (x, alpha) and (x', D(alpha)) with the same weights and
/// their presentations. Throws StructuralError when a presentation is not graded.
Quantization quantize(const RunConfig& config, const WeightAssignment& weights);

/// Unitality, grading and associativity mod h^{N+1} on all monomials of
/// degree 1 and 2; the JSON witness of the first failure, or nullopt.
std::optional<std::string> star_product_defect(const StarProduct& sp);

/// Some g = 1 + h G_1 + .. + h^N G_N (parity preserving) with
/// (g (x) g)(I_source) = I_target: one linearized solve over all orders, then
/// order-by-order corrections with the pivot representative. The linear
/// systems are exact; nullopt only says this search found nothing.
std::optional<TruncMatrix> gauge_search(const QuadraticPresentation& source, const QuadraticPresentation& target);
/// Relations transported along e_i -> sum_j g(j, i) e_j.
QuadraticPresentation apply_generator_change(const QuadraticPresentation& p, const TruncMatrix& g);

struct StageResult {
  int stage = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  /// JSON object with the stage details or the witness of the failure.
  std::string detail = "{}";
};

struct DualityReport {
  std::vector<StageResult> stages;
  /// "PASS", or "refuted at stage k".
  std::string verdict;
  /// 4 when the relation modules agree on the nose, 5 when a gauge was needed.
  int passed_at = 0;
  bool pass = false;

  std::string to_json() const;
  std::string to_text() const;
};

/// (1) quantize and gate associativity, unitality and grading on test triples;
/// (2) Koszul acyclicity of both sides; (3) quadratic_dual(S) and opposite(Lambda);
/// (4) strict comparison; (5) gauge search; (6) Ext dimensions against the
/// partner's graded dimensions.
DualityReport verify_duality(const RunConfig& config, const WeightAssignment& weights);

}  // namespace koszulq
