#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszulq/keller.hpp"
#include "koszulq/superpoly.hpp"

namespace koszulq {

enum class FgKind { G, F0, Finf };

std::string kind_name(FgKind k);

/// G, F^0 or F^inf of a bi-homogeneous gamma (deg_S = m, deg_Lambda = n), as
/// the mixed component on sources (lambda_1..lambda_m1, k, f_1..f_m2) -> K.
/// The lambda in the formulas is the slot at which the output K-element is
/// evaluated.
struct FgCochain {
  FgKind kind = FgKind::G;
  std::size_t m1 = 0, m2 = 0;
  SuperPolynomial gamma;
  Rational prefactor;
  KellerCochain realized;
};

/// Raw multilinear value (no prefactor) on polynomial arguments; lambdas are
/// exterior elements in the xi slots, k is a K-element in the basis x^kappa (xi_L)^*.
SuperPolynomial fg_cochain_value(FgKind kind, const SuperPolynomial& gamma,
                                 const std::vector<SuperPolynomial>& lambdas, const SuperPolynomial& k,
                                 const std::vector<SuperPolynomial>& fs);

/// Prefactor the builders use: 1 for all three kinds (sums over ordered index
/// tuples). This is the convention under which d_tot phi~^S = +-G_{0,n} and
/// the telescopes close.
Rational fg_prefactor(FgKind kind, std::size_t m1, std::size_t m2);
/// The prefactor as displayed with the formulas: 1/(m1! m2!) for G,
/// 1/(m1! (m2+1)!) for F^0, 1/((m1+1)! m2!) for F^inf.
Rational displayed_prefactor(FgKind kind, std::size_t m1, std::size_t m2);

/// Builds on `keller` (a keller_category) on sources of weight <= cutoff.
FgCochain build_G(const std::shared_ptr<const GradedCategory>& keller, const SuperPolynomial& gamma,
                  std::size_t m1, std::size_t m2, long cutoff);
FgCochain build_F0(const std::shared_ptr<const GradedCategory>& keller, const SuperPolynomial& gamma,
                   std::size_t m1, std::size_t m2, long cutoff);
FgCochain build_Finf(const std::shared_ptr<const GradedCategory>& keller, const SuperPolynomial& gamma,
                     std::size_t m1, std::size_t m2, long cutoff);

/// The part of total_differential coming from the products (m2 terms) and the
/// part coming from the differentials (m1 terms). They sum to total_differential.
KellerCochain hoch_part(const KellerCochain& c);
KellerCochain koszul_part(const KellerCochain& c);

/// phi~^S(gamma)(f_1..f_n) = gamma(df_1 ^ .. ^ df_n) on the A blocks and
/// phi~^Lambda(gamma)(l_1..l_m), its exterior analogue, on the B blocks; no 1/n!.
KellerCochain phi_tilde_S(const std::shared_ptr<const GradedCategory>& keller, const SuperPolynomial& gamma, long cutoff);
KellerCochain phi_tilde_Lambda(const std::shared_ptr<const GradedCategory>& keller, const SuperPolynomial& gamma,
                               long cutoff);

/// Some c with a == c * b (b != 0), or nullopt.
std::optional<Rational> proportionality(const Cochain& a, const Cochain& b);

struct FgIdentityResult {
  std::string which;
  std::size_t n = 0;
  unsigned degS = 0, degL = 0;
  std::string gamma;
  std::size_t m = 0, n_arity = 0;
  Rational scalar;  // stated scalar in front of G
  int sign = 0;     // e in {+1, -1} for which the identity holds, 0 if neither works
  /// c with lhs = c * G, when lhs is a multiple of G at all.
  std::optional<Rational> observed;
  bool pass = false;

  std::string to_json() const;
};

/// The F/G identities (i)-(iv) on keller_category(n, W, plain), sources of weight <= cutoff:
///  (i)   d_Hoch F^0_{m,n'}    = e G_{m,n'+1}
///  (ii)  d_Koszul F^0_{m,n'}  = e dim V (deg_Lambda - n') G_{m,n'}
///  (iii) d_Hoch F^inf_{m,n'}  = e G_{m+1,n'}
///  (iv)  d_Koszul F^inf_{m,n'} = e dim V (deg_S - m) G_{m,n'}
/// `which` is "i", "ii", "iii" or "iv".
FgIdentityResult verify_fg_identity(const SuperPolynomial& gamma, std::size_t m, std::size_t n_arity,
                                    const std::string& which, long cutoff = 3);

/// Signs e of the F/G identities, keyed by (which, parity of deg_S, parity of deg_Lambda),
/// and the signs s of d_tot phi~^S = s G_{0,n} ("phiS") and
/// d_tot phi~^Lambda = s G_{m,0} ("phiL"), keyed by the exact bidegree.
struct SignTable {
  std::map<std::string, int> entries;

  static std::string key(const std::string& which, unsigned degS, unsigned degL);
  /// Throws UsageError when the entry is missing.
  int get(const std::string& which, unsigned degS, unsigned degL) const;
  std::string to_json() const;
  static SignTable from_json(const std::string& text);
};

struct SignTableReport {
  SignTable table;
  std::vector<FgIdentityResult> results;
  /// Every cell of the table saw a single sign.
  bool consistent = false;
  /// consistent, and every identity held with its stated scalar.
  bool pass = false;

  std::string to_json() const;
};
/// Runs every identity over 1 <= n <= max_n, bidegrees up to (max_deg, max_deg)
/// and arities up to max_arity, on gamma = sum of all monomials of the bidegree
/// with coefficients 1, 2, 3, ...
SignTableReport resolve_sign_table(std::size_t max_n = 2, unsigned max_deg = 2, std::size_t max_arity = 2,
                                   long cutoff = 3);

/// The frozen table (docs/sign_table.json).
const SignTable& default_sign_table();

/// gamma = sum of all monomials of bidegree (degS, degL) in n variables with coefficients 1, 2, 3, ...
SuperPolynomial grid_gamma(std::size_t n, unsigned degS, unsigned degL);

struct TelescopeReport {
  std::string gamma;
  std::size_t n = 0;
  unsigned degS = 0, degL = 0;
  bool unit_dimension = false;
  /// d_tot(chain) = coefficient * G_{0,0}; expected |coefficient| = k! dim^k V.
  Rational expected_S, expected_Lambda;
  std::optional<Rational> observed_S, observed_Lambda;
  bool pass_S = false, pass_Lambda = false;
  bool pass = false;

  std::string to_json() const;
};
/// Both telescopes on the plain category. The chain coefficients are
/// +-(i-1)! dim^{i-1} V with signs taken from the table; with unit_dimension
/// dim V is replaced by 1 in the coefficients and in the expected value.
TelescopeReport telescope_check(const SuperPolynomial& gamma, const SignTable& signs = default_sign_table(),
                                bool unit_dimension = false, long cutoff = 3);

/// Category-level HKR cochain
///   s_S/n! (phi~^S + sum_i c_i F^0_{0,n-i}) - s_L/m! (phi~^Lambda + sum_j c'_j F^inf_{m-j,0})
/// with |c_i| = (i-1)!, |c'_j| = (j-1)! (dim V set to 1) and the signs from the table,
/// on keller_category(n, W, norm) with W = cutoff + deg_S + deg_Lambda + 2.
KellerCochain phi_cat(const SuperPolynomial& gamma, long cutoff, const SignTable& signs = default_sign_table(),
                      KoszulNormalization norm = KoszulNormalization::normalized);
/// Same on a given keller_category.
KellerCochain phi_cat(const std::shared_ptr<const GradedCategory>& keller, const SuperPolynomial& gamma, long cutoff,
                      const SignTable& signs = default_sign_table());

struct PhiCatReport {
  std::string gamma;
  KoszulNormalization norm = KoszulNormalization::normalized;
  bool closed = false;
  /// project_A(phi) = coef_A hkr(gamma) and project_B(phi) = coef_B phi~^Lambda / m!,
  /// when they are multiples at all; stated: +-1 for both.
  std::optional<Rational> coef_A, coef_B;
  bool pass_A = false, pass_B = false;
  bool pass = false;

  std::string to_json() const;
};
PhiCatReport phi_cat_check(const SuperPolynomial& gamma, long cutoff, const SignTable& signs = default_sign_table(),
                           KoszulNormalization norm = KoszulNormalization::normalized);

}  // namespace koszulq
