#pragma once

#include <climits>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "koszulq/category.hpp"
#include "koszulq/linalg.hpp"
#include "koszulq/trunc_series.hpp"

namespace koszulq {

/// Source block sequence (path order) and target block.
struct CochainKey {
  std::vector<int> src;
  int tgt = 0;
  auto operator<=>(const CochainKey&) const = default;
};

/// Nonzero columns of one multilinear component; column index is the mixed
/// radix index of the argument basis elements, first argument most significant.
struct Component {
  std::map<std::size_t, SparseVec> cols;
};

/// Normalized Hochschild cochain of a GradedCategory: a finite sum of
/// multilinear maps on reduced morphisms (unit blocks never appear as sources).
/// Known on every source sequence of weight <= cutoff; absent components
/// inside the cutoff are zero.
class Cochain {
 public:
  static constexpr long unbounded = LONG_MAX / 4;

  Cochain(std::shared_ptr<const GradedCategory> cat, long cutoff);

  const GradedCategory& category() const { return *cat_; }
  const std::shared_ptr<const GradedCategory>& category_ptr() const { return cat_; }
  long cutoff() const { return cutoff_; }
  void set_cutoff(long c) {
    cutoff_ = c;
    trim();
  }
  const std::map<CochainKey, Component>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  void add_entry(const CochainKey& key, std::size_t col, std::size_t row, const Rational& v);
  void add_column(const CochainKey& key, std::size_t col, const SparseVec& v, const Rational& scale = Rational(1));

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& operator*=(const Rational& c);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(Cochain a, const Rational& c) { return a *= c; }
  friend Cochain operator*(const Rational& c, Cochain a) { return a *= c; }
  /// Components agree on every source of weight <= min of the two cutoffs.
  friend bool operator==(const Cochain& a, const Cochain& b);

  /// Drops components with source weight above `cutoff` and lowers the cutoff.
  Cochain restricted(long cutoff) const;
  std::size_t max_arity() const;

  /// Value on basis arguments; the result is keyed by target block.
  std::map<int, SparseVec> evaluate(const std::vector<int>& src, const std::vector<std::size_t>& args) const;
  /// Multilinear evaluation on polynomial arguments (each term is located in
  /// the first block of the given kind that contains it; kind 0 = any).
  SuperPolynomial evaluate_poly(const std::vector<SuperPolynomial>& args, const std::vector<char>& kinds = {}) const;

  std::string to_json() const;

 private:
  void check_same(const Cochain& o) const;
  void trim();
  std::shared_ptr<const GradedCategory> cat_;
  long cutoff_;
  std::map<CochainKey, Component> comps_;
};

long source_weight(const GradedCategory& cat, const std::vector<int>& src);
/// Shifted degree coh(tgt) - 1 - sum (coh(src_i) - 1).
int shifted_degree(const GradedCategory& cat, const CochainKey& key);
/// inner(tgt) - sum inner(src_i).
int inner_shift(const GradedCategory& cat, const CochainKey& key);
std::size_t source_dim(const GradedCategory& cat, const std::vector<int>& src);

/// Composable sequences of reduced blocks of the given arity with weight <= max_weight.
std::vector<std::vector<int>> source_sequences(const GradedCategory& cat, std::size_t arity, long max_weight);

/// Splits a cochain into pieces of constant shifted degree.
std::map<int, Cochain> split_by_degree(const Cochain& c);

/// m2(u, v) = (-1)^{coh u} u v on all composable pairs, units included.
Cochain structure_m2(const std::shared_ptr<const GradedCategory>& cat);
/// m1 = -d.
Cochain structure_m1(const std::shared_ptr<const GradedCategory>& cat);
/// M = m1 + m2; [M, M] = 0.
Cochain structure_cochain(const std::shared_ptr<const GradedCategory>& cat);
/// Identity on every reduced block of weight <= cutoff.
Cochain identity_cochain(const std::shared_ptr<const GradedCategory>& cat, long cutoff);
/// Arity 0, value the unit of every object.
Cochain unit_cochain(const std::shared_ptr<const GradedCategory>& cat);

/// f{g_1..g_k}: order-preserving insertions with sign
/// (-1)^{sum_j |g_j|' (shifted degrees of outer arguments before g_j)}.
Cochain brace(const Cochain& f, const std::vector<Cochain>& gs);
/// D(psi) = M{psi} - (-1)^{|psi|'} psi{M}. On a one-object algebra with
/// coh = 0 this is (-1)^{p+1} times the textbook alternating formula.
Cochain hoch_differential(const Cochain& c);
/// [a, b] = a{b} - (-1)^{|a|'|b|'} b{a}.
Cochain gerstenhaber_bracket(const Cochain& a, const Cochain& b);
/// a cup b = (-1)^{(|a|'+1)|b|'} m2{a, b}.
Cochain cup(const Cochain& a, const Cochain& b);

/// Some u with D(u) = c on every component of weight <= cutoff, or nullopt.
/// Throws UsageError when D(c) != 0.
std::optional<Cochain> is_coboundary(const Cochain& c);

/// pi = sum_k h^k pi_k with pi_by_order[k] = pi_k (pi_0 must vanish). True iff
/// D(pi_k) + 1/2 sum_{i+j=k} [pi_i, pi_j] = 0 for every k <= N.
bool maurer_cartan_check(const std::vector<Cochain>& pi_by_order);

/// Basis of the finite space of cochains with the given sources and a
/// predicate on keys; used to assemble differentials on windows.
struct CochainBasis {
  std::vector<CochainKey> keys;
  struct Entry {
    std::size_t key, col, row;
  };
  std::vector<Entry> entries;
  std::map<CochainKey, std::size_t> key_index;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> lookup;

  std::size_t size() const { return entries.size(); }
  Cochain element(const std::shared_ptr<const GradedCategory>& cat, std::size_t i, long cutoff) const;
  /// Coordinates of c; throws StructuralError if c has support outside.
  SparseVec coordinates(const Cochain& c) const;
};

/// All keys with sources of the listed arities and weight <= max_weight,
/// for which keep(key) holds.
CochainBasis cochain_basis(const GradedCategory& cat, const std::vector<std::size_t>& arities, long max_weight,
                           const std::function<bool(const CochainKey&)>& keep);

/// Matrix of a linear map on cochains from `from` to `to`.
SparseMatrix assemble(const std::shared_ptr<const GradedCategory>& cat, const CochainBasis& from,
                      const CochainBasis& to, long cutoff, const std::function<Cochain(const Cochain&)>& map);

}  // namespace koszulq
