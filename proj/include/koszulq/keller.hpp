#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "koszulq/category.hpp"
#include "koszulq/cochain.hpp"

namespace koszulq {

/// A cochain on keller_category(n, W). Its pure-A keys form psi_A, its pure-B
/// keys psi_B, and every key with a K block (source or target) belongs to psi_K.
using KellerCochain = Cochain;

/// Throws UsageError unless the carrier has the A, B and K kinds.
void check_keller(const GradedCategory& cat);

/// d^A + d^B + d^K + d^{AK} + d^{BK}: the Hochschild differential of the
/// two-object category, including the Koszul differential on K.
KellerCochain total_differential(const KellerCochain& c);

KellerCochain psi_K(const KellerCochain& c);

/// p_A and p_B, landing on the one-object categories S(V*) and Lambda(V).
/// Blocks are matched by inner and cohomological degree.
Cochain project_A(const KellerCochain& c, const std::shared_ptr<const GradedCategory>& sym);
Cochain project_B(const KellerCochain& c, const std::shared_ptr<const GradedCategory>& ext);
/// Inverse of the projection on pure cochains.
KellerCochain embed(const Cochain& psi, const std::shared_ptr<const GradedCategory>& keller);

struct AdmissibilityEntry {
  std::string side;  // "A" (Hom over A, compared with B) or "B" (compared with A^op)
  int degree = 0;    // shifted degree of the cochains
  int inner = 0;     // inner shift
  std::size_t expected_dim = 0;
  std::size_t computed_dim = 0;
  /// Rank of the action map into cohomology.
  std::size_t image_rank = 0;
  bool pass = false;
};

struct AdmissibilityReport {
  std::size_t n = 0;
  long window = 0;
  bool scalar_module = false;
  std::vector<AdmissibilityEntry> entries;
  bool pass = false;

  std::string to_json() const;
};

/// Cohomology of Hom_{mod-A}(Bar K, K) = Hom(K (x) T(A_+), K) and of
/// Hom_{B-mod}(Bar K, K) on sources of weight <= window, compared with B and
/// A^op through the action maps b -> (k -> b.k), a -> (k -> k.a).
/// Windows above 4 (n <= 2) or 3 (n = 3) raise UsageError.
AdmissibilityReport keller_admissibility(std::size_t n, long window, bool scalar_module = false);

struct ConeEntry {
  std::string projection;  // "p_A" or "p_B"
  int degree = 0;
  int inner = 0;
  std::size_t cone_dim = 0;  // cohomology of the cone
  bool pass = false;
};

struct ConeReport {
  std::size_t n = 0;
  long window = 0;
  bool scalar_module = false;
  std::vector<ConeEntry> entries;
  bool pass = false;

  std::string to_json() const;
};

/// Cohomology of Cone(p_A) and Cone(p_B) per (degree, inner shift) inside the window.
ConeReport cone_acyclicity_check(std::size_t n, long window, bool scalar_module = false);

}  // namespace koszulq
