#include <gtest/gtest.h>

#include <random>

#include "koszulq/errors.hpp"
#include "koszulq/superpoly.hpp"

using namespace koszulq;
using F = SuperPolynomial::Flavor;

namespace {

SuperPolynomial X(std::size_t n, std::size_t i) { return SuperPolynomial::x(n, i); }
SuperPolynomial XI(std::size_t n, std::size_t i) { return SuperPolynomial::xi(n, i); }
SuperPolynomial C(std::size_t n, const Rational& c) { return SuperPolynomial::constant(n, c); }

SuperPolynomial random_homogeneous(std::mt19937& g, std::size_t n, unsigned s, unsigned k, F f = F::standard) {
  SuperPolynomial r(n, f);
  for (int t = 0; t < 3; ++t) {
    std::vector<unsigned> kappa(n, 0);
    for (unsigned a = 0; a < s; ++a) ++kappa[g() % n];
    std::vector<std::size_t> xs;
    for (unsigned a = 0; a < k; ++a) xs.push_back(1 + g() % n);
    r += SuperPolynomial::term(n, Rational(static_cast<int>(g() % 7) - 3), kappa, xs, f);
  }
  return r;
}

int deg(const SuperPolynomial& p) { return p.lambda_degree(); }
int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

SuperPolynomial poisson_bracket(const SuperPolynomial& alpha, const SuperPolynomial& f, const SuperPolynomial& g) {
  return contract(alpha, {f, g});
}

}  // namespace

TEST(Wedge, Examples) {
  const std::size_t n = 2;
  EXPECT_EQ(wedge(XI(n, 1), XI(n, 2)), SuperPolynomial::term(n, 1, {0, 0}, {1, 2}));
  EXPECT_EQ(wedge(XI(n, 2), XI(n, 1)), SuperPolynomial::term(n, -1, {0, 0}, {1, 2}));
  EXPECT_EQ(wedge(X(n, 1), X(n, 2)), wedge(X(n, 2), X(n, 1)));
  EXPECT_EQ(wedge(wedge(X(n, 1), XI(n, 1)), wedge(X(n, 2), XI(n, 2))), SuperPolynomial::term(n, 1, {1, 1}, {1, 2}));
  EXPECT_THROW(wedge(X(2, 1), X(3, 1)), UsageError);
}

TEST(Partials, Examples) {
  const std::size_t n = 2;
  EXPECT_EQ(partial_x(1, wedge(X(n, 1), X(n, 1))), wedge(C(n, 2), X(n, 1)));
  auto xi12 = wedge(XI(n, 1), XI(n, 2));
  EXPECT_EQ(partial_xi(1, xi12), XI(n, 2));
  EXPECT_EQ(partial_xi(2, xi12), -XI(n, 1));
  EXPECT_EQ(partial_xi(1, wedge(X(n, 2), wedge(XI(n, 2), XI(n, 1)))), -wedge(X(n, 2), XI(n, 2)));
  EXPECT_THROW(partial_x(3, xi12), UsageError);
  EXPECT_THROW(partial_xi(0, xi12), UsageError);
}

TEST(Schouten, Examples) {
  EXPECT_EQ(schouten(XI(1, 1), X(1, 1)), C(1, 1));
  const std::size_t n = 2;
  EXPECT_TRUE(schouten(wedge(X(n, 1), XI(n, 1)), wedge(X(n, 2), XI(n, 2))).is_zero());
  auto alpha = SuperPolynomial::term(n, 1, {1, 1}, {1, 2});
  EXPECT_TRUE(schouten(alpha, alpha).is_zero());
}

TEST(Schouten, VectorFieldsActAsLieDerivative) {
  // [x1 d1, d1 ^ d2] = L_{x1 d1}(d1 ^ d2) = -d1 ^ d2.
  const std::size_t n = 2;
  auto v = wedge(X(n, 1), XI(n, 1));
  auto b = wedge(XI(n, 1), XI(n, 2));
  EXPECT_EQ(schouten(v, b), -b);
  // [d1, x1 d1 ^ d2] = d1 ^ d2.
  EXPECT_EQ(schouten(XI(n, 1), SuperPolynomial::term(n, 1, {1, 0}, {1, 2})), b);
}

TEST(Duality, Examples) {
  const std::size_t n = 2;
  EXPECT_EQ(duality_map(wedge(X(n, 1), XI(n, 2))), wedge(SuperPolynomial::x(n, 2, F::dual), SuperPolynomial::xi(n, 1, F::dual)));
  EXPECT_EQ(duality_map(C(n, 1)), SuperPolynomial::constant(n, 1, F::dual));
  EXPECT_EQ(duality_map(SuperPolynomial::term(n, 1, {1, 1}, {1, 2})), SuperPolynomial::term(n, 1, {1, 1}, {1, 2}, F::dual));
  auto p = SuperPolynomial::term(n, 3, {2, 1}, {2});
  EXPECT_EQ(duality_map(duality_map(p)), p);
  auto d = duality_map(p);
  EXPECT_EQ(d.flavor(), F::dual);
  EXPECT_EQ(SuperPolynomial::bidegree(d.poly().terms().begin()->first, n), std::make_pair(1u, 3u));
}

TEST(IsPoisson, Examples) {
  EXPECT_TRUE(is_poisson(SuperPolynomial::term(2, 1, {1, 1}, {1, 2})));
  EXPECT_TRUE(is_poisson(SuperPolynomial(3)));
}

TEST(IsPoisson, AgreesWithBruteForceJacobiator) {
  const std::size_t n = 3;
  std::mt19937 g(5);
  std::vector<SuperPolynomial> cases;
  cases.push_back(SuperPolynomial::term(n, 1, {2, 0, 0}, {1, 2}) + SuperPolynomial::term(n, 1, {0, 1, 1}, {1, 2}) +
                  SuperPolynomial::term(n, 1, {0, 0, 2}, {2, 3}));
  for (int t = 0; t < 30; ++t) cases.push_back(random_homogeneous(g, n, 2, 2));
  // Diagonal quadratic brackets are Poisson.
  cases.push_back(SuperPolynomial::term(n, 2, {1, 1, 0}, {1, 2}) + SuperPolynomial::term(n, -1, {1, 0, 1}, {1, 3}) +
                  SuperPolynomial::term(n, 5, {0, 1, 1}, {2, 3}));
  int poisson = 0;
  for (const auto& alpha : cases) {
    bool jacobi = true;
    for (std::size_t i = 1; i <= n && jacobi; ++i)
      for (std::size_t j = 1; j <= n && jacobi; ++j)
        for (std::size_t k = 1; k <= n && jacobi; ++k) {
          auto jac = poisson_bracket(alpha, X(n, i), poisson_bracket(alpha, X(n, j), X(n, k))) +
                     poisson_bracket(alpha, X(n, j), poisson_bracket(alpha, X(n, k), X(n, i))) +
                     poisson_bracket(alpha, X(n, k), poisson_bracket(alpha, X(n, i), X(n, j)));
          jacobi = jac.is_zero();
        }
    EXPECT_EQ(is_poisson(alpha), jacobi) << alpha.to_string();
    poisson += jacobi;
  }
  EXPECT_GT(poisson, 0);
  EXPECT_LT(poisson, static_cast<int>(cases.size()));
}

TEST(Contract, Examples) {
  EXPECT_EQ(contract(XI(1, 1), {wedge(X(1, 1), X(1, 1))}), wedge(C(1, 2), X(1, 1)));
  const std::size_t n = 2;
  auto gamma = SuperPolynomial::term(n, 1, {1, 1}, {1, 2});
  EXPECT_EQ(contract(gamma, {X(n, 1), X(n, 2)}), wedge(X(n, 1), X(n, 2)));
  EXPECT_EQ(contract(gamma, {X(n, 2), X(n, 1)}), -wedge(X(n, 1), X(n, 2)));
  EXPECT_EQ(contract(C(n, 4), {}), C(n, 4));
  EXPECT_THROW(contract(gamma, {X(n, 1)}), UsageError);
  EXPECT_THROW(contract(gamma + XI(n, 1), {X(n, 1)}), UsageError);
}

TEST(SuperpolyProperty, GradedJacobiLeibnizAndDuality) {
  std::mt19937 g(21);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int t = 0; t < 60; ++t) {
      auto a = random_homogeneous(g, n, g() % 3, g() % 3);
      auto b = random_homogeneous(g, n, g() % 3, g() % 3);
      auto c = random_homogeneous(g, n, g() % 3, g() % 3);
      const int ka = deg(a), kb = deg(b), kc = deg(c);
      auto jac = sign((ka - 1) * (kc - 1)) * schouten(schouten(a, b), c) +
                 sign((kb - 1) * (ka - 1)) * schouten(schouten(b, c), a) +
                 sign((kc - 1) * (kb - 1)) * schouten(schouten(c, a), b);
      EXPECT_TRUE(jac.is_zero()) << a.to_string() << " | " << b.to_string() << " | " << c.to_string();
      auto leib = schouten(a, wedge(b, c)) - wedge(schouten(a, b), c) - sign((ka - 1) * kb) * wedge(b, schouten(a, c));
      EXPECT_TRUE(leib.is_zero());
      EXPECT_EQ(duality_map(schouten(a, b)), schouten(duality_map(a), duality_map(b)));
      // Antisymmetry.
      EXPECT_EQ(schouten(a, b), -sign((ka - 1) * (kb - 1)) * schouten(b, a));
    }
}

TEST(SuperpolyProperty, DualityPreservesQuadraticPoisson) {
  std::mt19937 g(29);
  const std::size_t n = 3;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    auto alpha = random_homogeneous(g, n, 2, 2);
    if (t % 2 == 0) alpha = SuperPolynomial::term(n, static_cast<int>(g() % 5) - 2, {1, 1, 0}, {1, 2}) +
                            SuperPolynomial::term(n, static_cast<int>(g() % 5) - 2, {0, 1, 1}, {2, 3}) +
                            SuperPolynomial::term(n, static_cast<int>(g() % 5) - 2, {1, 0, 1}, {1, 3});
    ASSERT_TRUE(is_quadratic_bivector(alpha));
    if (!is_poisson(alpha)) continue;
    ++checked;
    EXPECT_TRUE(is_poisson(duality_map(alpha)));
    EXPECT_TRUE(is_quadratic_bivector(duality_map(alpha)));
  }
  EXPECT_GT(checked, 50);
}
