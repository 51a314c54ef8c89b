#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszulq/linalg.hpp"
#include "koszulq/trunc_linalg.hpp"

namespace koszulq {

/// Quadratic algebra T(A_1)/(I) over Q (trunc empty) or Q[h]/(h^{N+1}).
/// Relations are vectors in the g^2 word basis: index i*g + j holds the
/// coefficient of e_i (x) e_j. Over Q the series have order 0.
struct QuadraticPresentation {
  std::optional<std::size_t> trunc;
  std::vector<std::string> names;
  std::vector<int> parity;  // 0 even, 1 odd
  std::vector<TruncVec> relations;

  std::size_t g() const { return names.size(); }
  std::size_t order() const { return trunc.value_or(0); }

  /// Polynomial algebra S(V*) on x1..xn.
  static QuadraticPresentation symmetric(std::size_t n, std::optional<std::size_t> trunc = std::nullopt);
  /// Exterior algebra Lambda(V) on xi1..xin.
  static QuadraticPresentation exterior(std::size_t n, std::optional<std::size_t> trunc = std::nullopt);
  /// Free algebra (no relations) on n generators of the given parity.
  static QuadraticPresentation free_algebra(std::size_t n, int parity, std::optional<std::size_t> trunc = std::nullopt);
};

/// Number of words of length d in g letters.
std::size_t word_count(std::size_t g, std::size_t d);
/// Letters of word index w (most significant first).
std::vector<std::size_t> word_letters(std::size_t w, std::size_t g, std::size_t d);
std::string word_name(const QuadraticPresentation& p, std::size_t w, std::size_t d);

/// Checks shapes, independence, and that the relation module is a direct
/// summand; throws UsageError / StructuralError (naming the h-degree).
void validate(const QuadraticPresentation& p);

/// I as an h-stable Q-subspace of the expanded g^2 (N+1) space.
Subspace relation_module(const QuadraticPresentation& p);
/// V^{(x) l} (x) M (x) V^{(x) r} for an h-stable M inside the expanded V^{(x) a}.
Subspace pad(const Subspace& m, std::size_t g, std::size_t order, std::size_t a, std::size_t l, std::size_t r);
/// Degree-d component of the two-sided ideal (I).
Subspace ideal_component(const QuadraticPresentation& p, std::size_t d);

/// Generators renamed with the prefix flipped (x <-> xi), parity flipped,
/// relations spanning the orthogonal complement of I under
/// <e_i(x)e_j, e^k(x)e^l> = (-1)^{p_j} delta_ik delta_jl.
QuadraticPresentation quadratic_dual(const QuadraticPresentation& p);
/// Relations transported by e_i(x)e_j -> (-1)^{p_i p_j} e_j(x)e_i.
QuadraticPresentation opposite(const QuadraticPresentation& p);
/// Submodule equality of relation modules (same g and ring).
bool same_relations(const QuadraticPresentation& a, const QuadraticPresentation& b);

/// Normal forms in degree d. The transversal keeps every word that is not the
/// leading (lexicographically largest) word of an element of the ideal
/// component reduced mod h.
struct GradedComponentBasis {
  std::size_t degree = 0;
  std::size_t g = 0;
  std::size_t order = 0;
  std::vector<std::size_t> transversal;  // word indices, increasing
  /// Row t, column w: coefficient of transversal[t] in the normal form of word w.
  TruncMatrix projection{0, 0, 0};
  /// Expanded Q-dimension of A_d and whether A_d is a free module of rank transversal.size().
  std::size_t q_dim = 0;
  bool free = true;

  /// Normal form of a word-space vector, in transversal coordinates.
  TruncVec normal_form(const TruncVec& words) const;
};

GradedComponentBasis graded_component(const QuadraticPresentation& p, std::size_t d);

/// Koszul complex A (x) K_i^i. K[i] is K_i^i inside the expanded V^{(x) i}.
struct KoszulComplexData {
  QuadraticPresentation presentation;
  std::size_t top = 0;
  std::vector<Subspace> K;

  /// Chain group A_j (x) K_i^i as U / W inside the expanded V^{(x)(j+i)}.
  Subspace chains(std::size_t j, std::size_t i) const;
  Subspace relations_in(std::size_t j, std::size_t i) const;
};

/// Builds K_i^i for i <= D and checks d^2 = 0; throws StructuralError otherwise.
KoszulComplexData koszul_complex(const QuadraticPresentation& p, std::size_t top);

struct KoszulCohomology {
  std::size_t order = 0;
  /// (homological degree i, inner degree m) -> Q-dimension of H.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> q_dims;
  /// Everything vanishes except H at (0,0), which is A_0.
  bool koszul_up_to_cutoff = false;
};

KoszulCohomology koszul_acyclicity(const KoszulComplexData& k, std::size_t inner_cutoff);

/// (a, b) -> Q-dimension of Ext^{a,b}(A_0, A_0) from the reduced bar complex,
/// a <= hom_cutoff, -b <= inner_cutoff. Over a truncated ring these are
/// Q-dimensions of the h-adic modules.
std::map<std::pair<std::size_t, long>, std::size_t> ext_dimensions_via_bar(const QuadraticPresentation& p,
                                                                            std::size_t hom_cutoff,
                                                                            std::size_t inner_cutoff);

}  // namespace koszulq
