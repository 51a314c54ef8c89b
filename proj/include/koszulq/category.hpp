#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "koszulq/linalg.hpp"
#include "koszulq/superpoly.hpp"

namespace koszulq {

/// A homogeneous piece of a morphism space. Basis elements are monomials in
/// the standard SuperPolynomial algebra on x_1..x_n, xi_1..xi_n; for the
/// bimodule K the xi-slots stand for the dual basis (xi_L)^* of Lambda(V).
struct Block {
  std::string name;
  char kind = 'A';  // 'A', 'B' or 'K'
  int src = 0, tgt = 0;
  int inner = 0, coh = 0;
  long weight = 0;  // truncation weight, >= 0
  bool unit = false;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;

  std::size_t dim() const { return basis.size(); }
};

/// Small graded linear category, truncated at a maximal weight. Composition
/// is in path order: u * v is defined when tgt(u) == src(v).
class GradedCategory {
 public:
  struct Product {
    int out;
    SparseMatrix table;  // dim(out) x (dim(u) * dim(v)), column i * dim(v) + j
  };
  struct Differential {
    int out;
    SparseMatrix table;  // dim(out) x dim(in)
  };

  std::size_t n = 0;
  std::vector<std::string> objects;
  std::vector<Block> blocks;
  long max_weight = 0;
  std::map<std::pair<int, int>, Product> mult;
  /// Composable pairs whose product lands beyond the truncation.
  std::set<std::pair<int, int>> beyond;
  std::map<int, Differential> diff;

  int add_block(Block b);
  std::optional<int> find_block(int src, int tgt, int inner, int coh) const;
  /// Throws CutoffError when the product is past the truncation.
  const Product* product(int u, int v) const;

  /// Fills `mult` from a bilinear rule on basis monomials.
  /// Products of basis monomials m (in block u) and m' (in block v).
  using Rule = std::function<SuperPolynomial(int u, const Monomial& m, int v, const Monomial& mp)>;
  void build_products(const Rule& rule);
  void set_differential(int block, const std::function<SuperPolynomial(const Monomial&)>& d);

  /// Coordinates of a SuperPolynomial in a block's basis; throws StructuralError if a term lies outside.
  SparseVec coords(int block, const SuperPolynomial& p) const;
  SuperPolynomial element(int block, const SparseVec& v) const;
  SuperPolynomial basis_element(int block, std::size_t i) const;
};

/// Polynomial algebra S(V*) as a one-object category, blocks A_0..A_W.
std::shared_ptr<const GradedCategory> symmetric_category(std::size_t n, long max_weight);
/// Exterior algebra Lambda(V), blocks B_0..B_n; xi has inner degree -1 and cohomological degree 1.
std::shared_ptr<const GradedCategory> exterior_category(std::size_t n);

/// Koszul bimodule differential variants.
enum class KoszulNormalization { plain, normalized };

/// Two-object category with End(a) = S(V*), End(b) = Lambda(V) and
/// Hom(b, a) = K = S(V*) (x) Lambda(V)^*, the Koszul bimodule: left Lambda
/// action (beta.k)(lambda) = k(lambda ^ beta), right action by multiplication,
/// d_K k (lambda) = c * sum_p x_p k(lambda ^ xi_p) with c = 1 or 1/n.
std::shared_ptr<const GradedCategory> keller_category(std::size_t n, long max_weight,
                                                     KoszulNormalization norm = KoszulNormalization::normalized,
                                                     bool scalar_module = false);

/// Monomials of total degree d in n even variables, in decreasing lexicographic order.
std::vector<std::vector<unsigned>> exponent_vectors(std::size_t n, unsigned d);
/// k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace koszulq
