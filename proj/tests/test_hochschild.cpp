#include <gtest/gtest.h>

#include <random>

#include "koszulq/cochain.hpp"
#include "koszulq/errors.hpp"
#include "koszulq/hochschild.hpp"

using namespace koszulq;

namespace {

using Cat = std::shared_ptr<const GradedCategory>;

SuperPolynomial X(std::size_t i) { return SuperPolynomial::x(2, i); }
SuperPolynomial XI(std::size_t i) { return SuperPolynomial::xi(2, i); }

// Random cochain of the given arity with sources in blocks of `kind`, landing
// in the block of the same kind whose inner degree is shifted by `shift`.
Cochain random_cochain(const Cat& cat, std::size_t arity, int shift, long cutoff, std::mt19937& rng, char kind = 'A') {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::bernoulli_distribution keep(0.4);
  Cochain c(cat, cutoff);
  for (int attempt = 0; attempt < 20 && c.is_zero(); ++attempt) {
    for (const auto& src : source_sequences(*cat, arity, cutoff)) {
      bool ok = true;
      int inner = 0;
      for (int b : src) {
        ok = ok && cat->blocks[b].kind == kind;
        inner += cat->blocks[b].inner;
      }
      if (!ok) continue;
      int s = src.empty() ? 0 : cat->blocks[src.front()].src;
      int t = src.empty() ? 0 : cat->blocks[src.back()].tgt;
      for (std::size_t tb = 0; tb < cat->blocks.size(); ++tb) {
        const auto& b = cat->blocks[tb];
        if (b.kind != kind || b.src != s || b.tgt != t || b.inner != inner + shift) continue;
        for (std::size_t col = 0; col < source_dim(*cat, src); ++col)
          for (std::size_t row = 0; row < b.dim(); ++row)
            if (keep(rng)) c.add_entry({src, static_cast<int>(tb)}, col, row, Rational(coef(rng)));
      }
    }
  }
  return c;
}

int degree_of(const Cochain& c) {
  auto parts = split_by_degree(c);
  EXPECT_EQ(parts.size(), 1u);
  return parts.begin()->first;
}

int sgn(long e) { return e % 2 == 0 ? 1 : -1; }

// Textbook alternating Hochschild differential on S(V*), evaluated directly.
SuperPolynomial textbook_d(const Cochain& psi, const std::vector<SuperPolynomial>& f) {
  std::size_t p = f.size() - 1;
  std::vector<SuperPolynomial> rest(f.begin() + 1, f.end());
  SuperPolynomial out = wedge(f[0], psi.evaluate_poly(rest, std::vector<char>(p, 'A')));
  for (std::size_t i = 1; i <= p; ++i) {
    std::vector<SuperPolynomial> args;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j + 1 == i) {
        args.push_back(wedge(f[j], f[j + 1]));
        ++j;
      } else {
        args.push_back(f[j]);
      }
    }
    out += psi.evaluate_poly(args, std::vector<char>(p, 'A')) * Rational(sgn(static_cast<long>(i)));
  }
  std::vector<SuperPolynomial> head(f.begin(), f.end() - 1);
  out += wedge(psi.evaluate_poly(head, std::vector<char>(p, 'A')), f[p]) * Rational(sgn(static_cast<long>(p) + 1));
  return out;
}

}  // namespace

TEST(Hochschild, DifferentialOfIdentityIsMultiplication) {
  auto S = symmetric_category(2, 6);
  Cochain d = hoch_differential(identity_cochain(S, 4));
  Cochain mu = polynomial_cochain(S, 'A', 2, 4, [](const auto& f) { return wedge(f[0], f[1]); });
  EXPECT_EQ(d.cutoff(), 4);
  EXPECT_TRUE(d == mu);
  EXPECT_EQ(d.evaluate_poly({X(1) + X(2), X(1) * Rational(3)}),
            wedge(X(1) + X(2), X(1)) * Rational(3));
}

TEST(Hochschild, HkrIsACocycle) {
  auto S = symmetric_category(2, 8);
  auto gamma = wedge(wedge(X(1), X(2)), wedge(XI(1), XI(2)));
  Cochain h = hkr(S, gamma, 4);
  EXPECT_FALSE(h.is_zero());
  Cochain d = hoch_differential(h);
  EXPECT_GE(d.cutoff(), 4);
  EXPECT_TRUE(d.is_zero());
}

TEST(Hochschild, HkrValues) {
  auto S = symmetric_category(2, 6);
  Cochain h = hkr(S, wedge(XI(1), XI(2)), 4);
  auto f = wedge(X(1), X(1)), g = wedge(X(1), X(2));
  // (1/2)(d1 f d2 g - d2 f d1 g) = (1/2)(2 x1 * x1) = x1^2
  EXPECT_EQ(h.evaluate_poly({f, g}), wedge(X(1), X(1)));
  Cochain v = hkr(S, wedge(X(2), XI(1)), 4);
  EXPECT_EQ(v.evaluate_poly({f}), wedge(X(2), X(1)) * Rational(2));
}

TEST(Hochschild, DifferentialSquaresToZero) {
  std::mt19937 rng(7);
  auto S = symmetric_category(2, 7);
  for (int shift : {-1, 0, 1}) {
    Cochain c1 = random_cochain(S, 1, shift, 4, rng);
    Cochain c2 = random_cochain(S, 2, shift, 4, rng);
    EXPECT_TRUE(hoch_differential(hoch_differential(c1)).is_zero());
    EXPECT_TRUE(hoch_differential(hoch_differential(c2)).is_zero());
  }
  auto L = exterior_category(2);
  for (std::size_t p : {1u, 2u}) {
    Cochain c = random_cochain(L, p, 0, 0, rng, 'B') + random_cochain(L, p, -1, 0, rng, 'B');
    EXPECT_FALSE(c.is_zero());
    EXPECT_TRUE(hoch_differential(hoch_differential(c)).is_zero());
  }
}

TEST(Hochschild, StructureCochainIsMaurerCartan) {
  for (const Cat& cat : {symmetric_category(2, 4), exterior_category(2), exterior_category(3),
                         keller_category(2, 4, KoszulNormalization::plain),
                         keller_category(2, 4, KoszulNormalization::normalized), keller_category(1, 3)}) {
    Cochain m = structure_cochain(cat);
    EXPECT_TRUE(brace(m, {m}).is_zero());
  }
}

TEST(Hochschild, DifferentialMatchesAlternatingFormula) {
  std::mt19937 rng(11);
  auto S = symmetric_category(2, 8);
  std::vector<SuperPolynomial> probes = {X(1), X(2), wedge(X(1), X(2)), wedge(X(2), X(2)) + X(1)};
  for (std::size_t p : {0u, 1u, 2u}) {
    Cochain psi = random_cochain(S, p, 1, 6, rng);
    Cochain d = hoch_differential(psi);
    std::vector<SuperPolynomial> f(p + 1);
    for (std::size_t trial = 0; trial < 6; ++trial) {
      for (std::size_t i = 0; i <= p; ++i) f[i] = probes[(trial + 3 * i) % probes.size()];
      EXPECT_EQ(d.evaluate_poly(f, std::vector<char>(p + 1, 'A')),
                textbook_d(psi, f) * Rational(sgn(static_cast<long>(p) + 1)));
    }
  }
}

TEST(Hochschild, BracketWithMultiplicationIsTheDifferential) {
  std::mt19937 rng(3);
  auto S = symmetric_category(2, 6);
  Cochain mu = structure_m2(S);
  for (std::size_t p : {1u, 2u}) {
    Cochain c = random_cochain(S, p, 0, 4, rng);
    EXPECT_TRUE(gerstenhaber_bracket(mu, c) == hoch_differential(c));
  }
}

TEST(Hochschild, BraceExamples) {
  std::mt19937 rng(5);
  auto S = symmetric_category(2, 8);
  Cochain f1 = random_cochain(S, 1, 0, 5, rng);
  Cochain g1 = random_cochain(S, 1, 1, 4, rng);
  auto a = X(1) + wedge(X(2), X(2)), b = wedge(X(1), X(2));
  std::vector<char> A1{'A'}, A2{'A', 'A'};
  EXPECT_EQ(brace(f1, {g1}).evaluate_poly({a}, A1), f1.evaluate_poly({g1.evaluate_poly({a}, A1)}, A1));
  Cochain f2 = random_cochain(S, 2, 0, 5, rng);
  Cochain g = random_cochain(S, 1, 0, 5, rng);
  // |g|' = 0, so both insertions come with sign +1.
  EXPECT_EQ(brace(f2, {g}).evaluate_poly({a, b}, A2),
            f2.evaluate_poly({g.evaluate_poly({a}, A1), b}, A2) + f2.evaluate_poly({a, g.evaluate_poly({b}, A1)}, A2));
  EXPECT_THROW(brace(g, {g, g}), UsageError);
}

TEST(Hochschild, PreJacobiIdentity) {
  std::mt19937 rng(13);
  auto S = symmetric_category(2, 8);
  Cochain f = random_cochain(S, 2, 0, 3, rng) + random_cochain(S, 3, 0, 3, rng);
  for (auto [pg, ph] : {std::pair{1u, 2u}, std::pair{2u, 1u}, std::pair{2u, 2u}, std::pair{1u, 0u}}) {
    Cochain g = random_cochain(S, pg, 0, 3, rng);
    Cochain h = random_cochain(S, ph, 0, 3, rng);
    int dg = degree_of(g), dh = degree_of(h);
    Cochain lhs = brace(brace(f, {g}), {h}) - brace(f, {brace(g, {h})});
    Cochain rhs = brace(f, {g, h}) + brace(f, {h, g}) * Rational(sgn(static_cast<long>(dg) * dh));
    EXPECT_TRUE(lhs == rhs);
  }
}

TEST(Hochschild, GerstenhaberJacobi) {
  std::mt19937 rng(17);
  auto S = symmetric_category(2, 8);
  for (int trial = 0; trial < 3; ++trial) {
    Cochain a = random_cochain(S, 1 + trial % 2, 0, 3, rng);
    Cochain b = random_cochain(S, 2, -1, 3, rng);
    Cochain c = random_cochain(S, 1, 1, 3, rng);
    int da = degree_of(a), db = degree_of(b);
    Cochain lhs = gerstenhaber_bracket(a, gerstenhaber_bracket(b, c));
    Cochain rhs = gerstenhaber_bracket(gerstenhaber_bracket(a, b), c) +
                  gerstenhaber_bracket(b, gerstenhaber_bracket(a, c)) * Rational(sgn(static_cast<long>(da) * db));
    EXPECT_TRUE(lhs == rhs);
  }
}

TEST(Hochschild, BracketOfOddCochainWithItself) {
  std::mt19937 rng(19);
  auto S = symmetric_category(2, 6);
  Cochain a = random_cochain(S, 2, 0, 4, rng);
  EXPECT_EQ(degree_of(a), 1);
  EXPECT_TRUE(gerstenhaber_bracket(a, a) == brace(a, {a}) * Rational(2));
}

TEST(Hochschild, CupProduct) {
  std::mt19937 rng(23);
  auto S = symmetric_category(2, 8);
  Cochain b = random_cochain(S, 2, 1, 4, rng);
  EXPECT_TRUE(cup(unit_cochain(S), b) == b);
  EXPECT_TRUE(cup(b, unit_cochain(S)) == b);

  Cochain a1 = random_cochain(S, 1, 0, 4, rng), b1 = random_cochain(S, 1, 1, 4, rng);
  std::vector<char> A1{'A'};
  EXPECT_EQ(cup(a1, b1).evaluate_poly({X(1), X(2)}, {'A', 'A'}),
            wedge(a1.evaluate_poly({X(1)}, A1), b1.evaluate_poly({X(2)}, A1)));

  Cochain c = random_cochain(S, 1, -1, 4, rng);
  EXPECT_TRUE(cup(cup(a1, b), c) == cup(a1, cup(b, c)));
}

TEST(Hochschild, DifferentialIsADerivationOfCup) {
  std::mt19937 rng(29);
  auto S = symmetric_category(2, 8);
  for (auto [pa, pb] : {std::pair{1u, 1u}, std::pair{1u, 2u}, std::pair{2u, 1u}, std::pair{0u, 2u}}) {
    Cochain a = random_cochain(S, pa, 0, 3, rng);
    Cochain b = random_cochain(S, pb, 1, 3, rng);
    // D acts as a derivation from the right: D(a u b) = (-1)^{|b|} D(a) u b + a u D(b).
    long deg_b = degree_of(b) + 1;
    Cochain lhs = hoch_differential(cup(a, b));
    Cochain rhs = cup(hoch_differential(a), b) * Rational(sgn(deg_b)) + cup(a, hoch_differential(b));
    EXPECT_TRUE(lhs == rhs) << pa << "," << pb;
  }
}

TEST(Hochschild, CupIsCommutativeUpToCoboundary) {
  auto S = symmetric_category(2, 8);
  Cochain a = hkr(S, wedge(X(1), XI(1)), 3), b = hkr(S, wedge(X(2), XI(2)) + XI(1), 3);
  auto w = is_coboundary(cup(a, b) + cup(b, a));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(hoch_differential(*w) == cup(a, b) + cup(b, a));
}

TEST(Hochschild, HkrIsMultiplicativeUpToCoboundary) {
  auto S = symmetric_category(2, 8);
  Cochain c = cup(hkr(S, XI(1), 4), hkr(S, XI(2), 4)) - hkr(S, wedge(XI(1), XI(2)), 4);
  EXPECT_FALSE(c.is_zero());
  auto w = is_coboundary(c);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(hoch_differential(*w) == c);
  EXPECT_FALSE(is_coboundary(hkr(S, wedge(XI(1), XI(2)), 4)).has_value());
}

TEST(Hochschild, IsCoboundaryExamples) {
  auto S = symmetric_category(2, 6);
  auto w0 = is_coboundary(Cochain(S, 4));
  ASSERT_TRUE(w0.has_value());
  EXPECT_TRUE(w0->is_zero());
  Cochain mu = polynomial_cochain(S, 'A', 2, 4, [](const auto& f) { return wedge(f[0], f[1]); });
  auto w = is_coboundary(mu);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(hoch_differential(*w) == mu);
  // The witness is the identity up to a derivation of degree 0.
  EXPECT_TRUE(hoch_differential(*w - identity_cochain(S, 4)).is_zero());
  std::mt19937 rng(31);
  EXPECT_THROW(is_coboundary(random_cochain(S, 1, 0, 3, rng)), UsageError);
}

TEST(Hochschild, HkrIntertwinesBracketsUpToCoboundary) {
  auto S = symmetric_category(2, 9);
  std::vector<SuperPolynomial> gammas = {
      wedge(wedge(X(1), XI(1)), XI(2)),         // x1 xi1 xi2
      wedge(wedge(X(2), X(2)), XI(1)),          // x2^2 xi1
      wedge(X(1), XI(2)),                       // x1 xi2
      wedge(wedge(X(1), X(2)), wedge(XI(1), XI(2))),
  };
  for (std::size_t i = 0; i < gammas.size(); ++i)
    for (std::size_t j = i; j < gammas.size(); ++j) {
      Cochain a = hkr(S, gammas[i], 4), b = hkr(S, gammas[j], 4);
      Cochain c = gerstenhaber_bracket(a, b) - hkr(S, schouten(gammas[i], gammas[j]), 4).restricted(
                                                   gerstenhaber_bracket(a, b).cutoff());
      auto w = is_coboundary(c);
      ASSERT_TRUE(w.has_value()) << i << "," << j;
      EXPECT_TRUE(hoch_differential(*w) == c);
    }
}

TEST(Hochschild, MaurerCartan) {
  auto S = symmetric_category(2, 8);
  EXPECT_TRUE(maurer_cartan_check({Cochain(S, 4), Cochain(S, 4)}));
  auto alpha = wedge(wedge(X(1), X(2)), wedge(XI(1), XI(2)));
  Cochain h = hkr(S, alpha, 4);
  EXPECT_TRUE(maurer_cartan_check({Cochain(S, 4), h}));
  EXPECT_FALSE(maurer_cartan_check({Cochain(S, 4), h, Cochain(S, 4)}));
}

TEST(Hochschild, CutoffIsEnforced) {
  auto S = symmetric_category(2, 4);
  Cochain h = hkr(S, wedge(X(1), XI(1)), 4);
  EXPECT_THROW(h.evaluate({5, 5}, {0, 0}), UsageError);
  EXPECT_THROW(hkr(S, wedge(wedge(X(1), X(1)), XI(1)), 4), CutoffError);
  Cochain id = identity_cochain(S, 2);
  EXPECT_THROW(id.evaluate({3}, {0}), CutoffError);
}

TEST(Hochschild, HkrBracketSignWithFunctions) {
  EXPECT_EQ(hkr_bracket_sign(2, 0), -1);
  EXPECT_EQ(hkr_bracket_sign(0, 2), -1);
  EXPECT_EQ(hkr_bracket_sign(1, 0), 1);
  EXPECT_EQ(hkr_bracket_sign(2, 1), 1);
  auto S = symmetric_category(2, 8);
  std::vector<SuperPolynomial> gammas = {wedge(XI(1), XI(2)), wedge(X(1), X(1)), X(1) + X(2) * Rational(2),
                                         wedge(X(2), XI(1)), SuperPolynomial::constant(2, Rational(3))};
  for (const auto& g1 : gammas)
    for (const auto& g2 : gammas) {
      Cochain a = hkr(S, g1, 3), b = hkr(S, g2, 3);
      Cochain br = gerstenhaber_bracket(a, b);
      int e = hkr_bracket_sign(g1.lambda_degree(), g2.lambda_degree());
      Cochain c = br - hkr(S, schouten(g1, g2), 3).restricted(br.cutoff()) * Rational(e);
      auto w = is_coboundary(c);
      ASSERT_TRUE(w.has_value()) << g1.to_string() << " | " << g2.to_string();
      EXPECT_EQ(hoch_differential(*w), c);
    }
  // a bivector against a function: the literal difference is not exact
  Cochain a = hkr(S, gammas[0], 3), f = hkr(S, X(1), 3);
  Cochain br = gerstenhaber_bracket(a, f);
  EXPECT_FALSE(is_coboundary(br - hkr(S, schouten(gammas[0], X(1)), 3).restricted(br.cutoff())).has_value());
}
