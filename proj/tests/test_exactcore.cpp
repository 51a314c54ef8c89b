#include <gtest/gtest.h>

#include <random>

#include "koszulq/errors.hpp"
#include "koszulq/linalg.hpp"
#include "koszulq/trunc_linalg.hpp"

using namespace koszulq;

namespace {

SparseMatrix dense(std::vector<DenseVec> rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  return SparseMatrix::from_dense(rows, cols);
}

TruncSeries ts(std::size_t order, std::vector<Rational> c) { return TruncSeries(order, std::move(c)); }

SparseMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> val(-3, 3), den(1, 4), sparse(0, 2);
  SparseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (sparse(rng) != 0) {
        Rational q(val(rng), den(rng));
        q.canonicalize();
        m.add(i, j, q);
      }
  return m;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_THROW(parse_rational("1/0"), UsageError);
  EXPECT_THROW(parse_rational("1/-2"), UsageError);
  EXPECT_THROW(parse_rational("x"), UsageError);
}

TEST(TruncSeries, InverseOfUnit) {
  auto u = ts(3, {1, 1});
  auto inv = u.inverse();
  EXPECT_EQ(inv, ts(3, {1, -1, 1, -1}));
  EXPECT_EQ(u * inv, TruncSeries(3, Rational(1)));
  EXPECT_THROW(TruncSeries::hbar(3).inverse(), StructuralError);
  EXPECT_THROW(TruncSeries(2) + TruncSeries(3), UsageError);
}

TEST(KernelBasis, ZeroMap) {
  auto k = kernel_basis(dense({{0}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], DenseVec{1});
}

TEST(KernelBasis, Identity) { EXPECT_TRUE(kernel_basis(SparseMatrix::identity(2)).empty()); }

TEST(KernelBasis, RankOneTwoByTwo) {
  auto k = kernel_basis(dense({{1, 1}, {2, 2}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (DenseVec{-1, 1}));  // the span of (1, -1)
}

TEST(SolveLinear, Identity) {
  auto x = solve_linear(SparseMatrix::identity(2), {3, -2});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (DenseVec{3, -2}));
}

TEST(SolveLinear, PivotRuleSetsFreeVariablesToZero) {
  auto x = solve_linear(dense({{1, 1}}), {5});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (DenseVec{5, 0}));
}

TEST(SolveLinear, Inconsistent) { EXPECT_FALSE(solve_linear(dense({{1}, {1}}), {1, 2})); }

TEST(SolveLinear, DimensionMismatch) { EXPECT_THROW(solve_linear(dense({{1, 1}}), {1, 2}), UsageError); }

TEST(TruncKernel, HbarAtOrderOne) {
  TruncMatrix m(1, 1, 1);
  m.add(0, 0, TruncSeries::hbar(1));
  auto k = trunc_kernel(m);
  EXPECT_TRUE(submodule_equal(k, {{TruncSeries::hbar(1)}}));
}

TEST(TruncKernel, UnitEntry) {
  TruncMatrix m(1, 1, 2);
  m.add(0, 0, ts(2, {1, 1}));
  EXPECT_TRUE(trunc_kernel(m).empty());
}

TEST(TruncKernel, BlockExpansion) {
  TruncMatrix m(2, 2, 1);
  m.add(0, 0, ts(1, {1}));
  m.add(0, 1, ts(1, {-1}));
  m.add(1, 0, TruncSeries::hbar(1));
  m.add(1, 1, -TruncSeries::hbar(1));
  auto k = trunc_kernel(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(submodule_equal(k, {{ts(1, {1}), ts(1, {1})}}));
}

TEST(SubmoduleEqual, Examples) {
  std::vector<TruncVec> e1{{ts(0, {1}), ts(0, {0})}};
  EXPECT_TRUE(submodule_equal(e1, e1));
  EXPECT_FALSE(submodule_equal({{ts(1, {1}), TruncSeries::hbar(1)}}, {{ts(1, {1}), ts(1, {0})}}));
  EXPECT_TRUE(submodule_equal({{ts(0, {2}), ts(0, {0})}, {ts(0, {0}), ts(0, {2})}},
                              {{ts(0, {1}), ts(0, {0})}, {ts(0, {0}), ts(0, {1})}}));
  EXPECT_THROW(submodule_equal({{ts(0, {1})}}, {{ts(0, {1}), ts(0, {0})}}), UsageError);
}

TEST(ExactcoreProperty, RankNullityAndRankRoutesAgree) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c);
    auto k = kernel_basis(m);
    EXPECT_EQ(rank(m), rank_rational(m));
    EXPECT_EQ(rank(m) + k.size(), c);
    for (const auto& v : k) {
      for (const auto& y : m.apply(v)) EXPECT_EQ(y, 0);
    }
    EXPECT_EQ(Subspace::span(c, [&] {
                std::vector<SparseVec> s;
                for (auto& v : k) s.push_back(to_sparse(v));
                return s;
              }()).dim(),
              k.size());
  }
}

TEST(ExactcoreProperty, SolveMatchesRankCriterion) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    auto m = random_matrix(rng, r, c);
    DenseVec rhs(r);
    for (auto& x : rhs) x = static_cast<int>(rng() % 5) - 2;
    SparseMatrix aug(r, c + 1);
    for (std::size_t i = 0; i < r; ++i) {
      for (const auto& [j, v] : m.row(i)) aug.add(i, j, v);
      aug.add(i, c, rhs[i]);
    }
    auto x = solve_linear(m, rhs);
    EXPECT_EQ(x.has_value(), rank(aug) == rank(m));
    if (x) EXPECT_EQ(m.apply(*x), rhs);
  }
}

TEST(ExactcoreProperty, TruncKernelAtOrderZeroMatchesRationalKernel) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c);
    TruncMatrix t(r, c, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (const auto& [j, v] : m.row(i)) t.add(i, j, TruncSeries(0, v));
    std::vector<TruncVec> expected;
    for (const auto& v : kernel_basis(m)) {
      TruncVec tv;
      for (const auto& x : v) tv.emplace_back(0, x);
      expected.push_back(tv);
    }
    EXPECT_TRUE(submodule_equal(trunc_kernel(t), expected));
  }
}

TEST(ExactcoreProperty, SubmoduleEqualIsAnEquivalence) {
  std::mt19937 rng(17);
  const std::size_t order = 2, dim = 2;
  auto random_family = [&] {
    std::vector<TruncVec> fam(1 + rng() % 2);
    for (auto& v : fam) {
      v.assign(dim, TruncSeries(order));
      for (auto& x : v)
        for (std::size_t k = 0; k <= order; ++k) x[k] = static_cast<int>(rng() % 3) - 1;
    }
    return fam;
  };
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_family();
    // b and c regenerate a's module through unit changes of generators.
    auto b = a;
    for (auto& x : b[0]) x *= ts(order, {2, 1});
    auto c = b;
    if (c.size() > 1)
      for (std::size_t i = 0; i < dim; ++i) c[1][i] += TruncSeries::hbar(order) * c[0][i];
    auto d = random_family();
    EXPECT_TRUE(submodule_equal(a, a));
    EXPECT_TRUE(submodule_equal(a, b) && submodule_equal(b, c) && submodule_equal(a, c));
    EXPECT_EQ(submodule_equal(a, d), submodule_equal(d, a));
    if (submodule_equal(a, d) && submodule_equal(d, b)) EXPECT_TRUE(submodule_equal(a, b));
  }
}
