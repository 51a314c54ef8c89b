#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "koszulq/category.hpp"
#include "koszulq/cochain.hpp"
#include "koszulq/superpoly.hpp"

namespace koszulq {

/// Cochain of the given arity on the blocks of one kind, defined by a
/// function of basis polynomials. Values are split over target blocks of the
/// same kind; a value outside the materialized blocks is a CutoffError.
Cochain polynomial_cochain(const std::shared_ptr<const GradedCategory>& cat, char kind, std::size_t arity, long cutoff,
                           const std::function<SuperPolynomial(const std::vector<SuperPolynomial>&)>& fn);

/// HKR cochain phi(gamma)(f_1..f_k) = (1/k!) gamma(df_1 ^ ... ^ df_k) on the
/// 'A' blocks, summed over the Lambda-degrees of gamma.
Cochain hkr(const std::shared_ptr<const GradedCategory>& cat, const SuperPolynomial& gamma, long cutoff);

/// e(k1, k2) = (-1)^{s(k1) + s(k2) + s(k1 + k2 - 1)}, s(k) = k(k-1)/2: the sign with
/// [hkr(g1), hkr(g2)] - e hkr(schouten(g1, g2)) exact for Lambda-degrees k1, k2.
int hkr_bracket_sign(unsigned k1, unsigned k2);

}  // namespace koszulq
