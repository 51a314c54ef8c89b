#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "koszulq/cochain.hpp"
#include "koszulq/quadalg.hpp"
#include "koszulq/superpoly.hpp"

namespace koszulq {

/// Graph with k aerial vertices and two ground vertices L, R. Aerial vertex v
/// has two ordered edges; a target is an aerial vertex 0..k-1 (its own index
/// is a simple loop), L or R.
struct AdmissibleGraph {
  static constexpr int L = -1;
  static constexpr int R = -2;

  std::size_t k = 0;
  std::vector<std::array<int, 2>> edges;

  /// e.g. "k2:v1->(L,v2);v2->(R,L)"; vertices printed 1-based.
  std::string key() const;
  bool has_loop() const;
  /// Smallest key over relabelings of the aerial vertices.
  AdmissibleGraph canonical() const;
  static AdmissibleGraph parse(const std::string& key);
};

/// Isomorphism classes with k <= 2 aerial vertices in key order.
std::vector<AdmissibleGraph> enumerate_graphs(std::size_t k, bool loops = true);

/// B_Gamma(f, h). Every vertex carries a copy of alpha, L carries f, R carries
/// h, each in its own slot of variables; edge e = (v -> t) with index a acts
/// by the odd operator sum_a d/dzeta_a^{(v)} d/dz_a^{(t)}, where z are the
/// coordinate slots (x) and zeta the momentum slots (xi) of the flavour.
/// Edges act in order (vertex 1 first edge first); the slots are then identified.
/// On the standard flavour the wedge graph gives superpoly.contract(alpha, {f, h}).
SuperPolynomial evaluate_graph(const AdmissibleGraph& g, const SuperPolynomial& alpha, const SuperPolynomial& f,
                               const SuperPolynomial& h);

struct WeightAssignment {
  std::map<std::string, Rational> weights;  // canonical key -> W
  /// Dimension of the affine solution space at order 2 (0 when not solved).
  std::size_t solution_dim = 0;
  std::size_t constraint_rows = 0;
  bool free_loops = true;

  Rational weight(const AdmissibleGraph& g) const;
  std::string to_json() const;
  static WeightAssignment from_json(const std::string& text);
};

/// Order-1 weights: W = 1/2 on the wedge graph (L,R), 0 elsewhere, so U_1 = hkr.
WeightAssignment first_order_weights();

struct WeightOptions {
  bool free_loops = true;
  /// Largest degree of the monomials f, g, h in the constraint triples.
  unsigned degree = 2;
  /// Also impose associativity for the odd target parity (alpha -> D(alpha)).
  bool both_parities = true;
};

/// Order-2 weights from associativity mod h^3 and unitality on the given
/// quadratic Poisson bivectors; the pivot-rule representative (free variables
/// 0). Throws StructuralError when the system is inconsistent.
WeightAssignment solve_weights(const std::vector<SuperPolynomial>& test_bivectors, const WeightOptions& opt = {});

/// f * g = sum_k h^k sum_{|Gamma| = k} W_Gamma B_Gamma(f, g). The target
/// parity follows the flavour of alpha: standard for S(V*) with even x,
/// dual for the exterior side with odd x' (alpha there is D of a bivector).
struct StarProduct {
  SuperPolynomial alpha;
  WeightAssignment weights;
  std::size_t order = 2;

  bool odd() const { return alpha.flavor() == SuperPolynomial::Flavor::dual; }
};

/// Coefficients of h^0..h^order.
using SeriesPoly = std::vector<SuperPolynomial>;

SeriesPoly star(const StarProduct& sp, const SuperPolynomial& f, const SuperPolynomial& h);
SeriesPoly star(const StarProduct& sp, const SeriesPoly& f, const SeriesPoly& h);
/// (f*g)*h - f*(g*h).
SeriesPoly associativity_defect(const StarProduct& sp, const SuperPolynomial& f, const SuperPolynomial& g,
                                const SuperPolynomial& h);
bool series_is_zero(const SeriesPoly& s);

/// Generators of the algebra the star product deforms: x_i (even) or x'_i (odd).
SuperPolynomial star_generator(const StarProduct& sp, std::size_t i);

/// Kernel of T^2 -> A_2, x_i (x) x_j -> x_i * x_j, over Q[h]/(h^{N+1}).
/// Generators are named x1..xn (even) or xi1..xin (odd).
QuadraticPresentation presentation_from_star(const StarProduct& sp);

/// pi_k = sum_{|Gamma| = k} W_Gamma B_Gamma as cochains on a symmetric category
/// (even parity only); pi_0 = 0. Feed to maurer_cartan_check.
std::vector<Cochain> star_cochains(const StarProduct& sp, const std::shared_ptr<const GradedCategory>& cat, long cutoff);

}  // namespace koszulq
