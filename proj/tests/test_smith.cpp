#include "seventerm/smith.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

using namespace seventerm;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_unimodular(const IntMatrix& m) {
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

void expect_valid_snf(const IntMatrix& a, const SnfDecomposition& snf) {
  ASSERT_EQ(snf.U * a * snf.V, snf.S);
  EXPECT_TRUE(is_unimodular(snf.U));
  EXPECT_TRUE(is_unimodular(snf.V));
  for (std::size_t i = 0; i < snf.S.rows(); ++i)
    for (std::size_t j = 0; j < snf.S.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(snf.S(i, j), 0);
      }
  for (std::size_t i = 0; i + 1 < snf.invariant_factors.size(); ++i) {
    const Integer& d = snf.invariant_factors[i];
    const Integer& next = snf.invariant_factors[i + 1];
    EXPECT_GE(d, 0);
    if (d == 0) {
      EXPECT_EQ(next, 0);
    } else {
      EXPECT_EQ(next % d, 0);
    }
  }
}

/// Determinantal divisors: D_k = gcd of all k x k minors. The k-th invariant
/// factor is D_k / D_(k-1), with 0 once D_k vanishes.
std::vector<Integer> invariant_factors_from_minors(const IntMatrix& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  std::vector<Integer> out;
  Integer previous = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer dk = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t depth, std::size_t start) {
      if (depth == k) {
        pick_cols(0, 0);
        return;
      }
      for (std::size_t r = start; r < a.rows(); ++r) {
        rows[depth] = r;
        pick_rows(depth + 1, r + 1);
      }
    };
    pick_cols = [&](std::size_t depth, std::size_t start) {
      if (depth == k) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
        dk = gcd(dk, abs_value(determinant(sub)));
        return;
      }
      for (std::size_t c = start; c < a.cols(); ++c) {
        cols[depth] = c;
        pick_cols(depth + 1, c + 1);
      }
    };
    pick_rows(0, 0);
    out.push_back(previous == 0 ? Integer(0) : Integer(dk / previous));
    previous = dk;
  }
  return out;
}

}  // namespace

TEST(Smith, InvariantFactorsMatchDeterminantalDivisors) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    IntMatrix a = random_matrix(rng, dim(rng), dim(rng), 6);
    EXPECT_EQ(smith_normal_form(a).invariant_factors, invariant_factors_from_minors(a));
  }
  IntMatrix d = IntMatrix::from_rows({{2, 0}, {0, 3}});
  EXPECT_EQ(invariant_factors_from_minors(d), (std::vector<Integer>{1, 6}));
}

TEST(Smith, DiagonalTwoThree) {
  IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  auto snf = smith_normal_form(a);
  expect_valid_snf(a, snf);
  EXPECT_EQ(snf.invariant_factors, (std::vector<Integer>{1, 6}));
}

TEST(Smith, IdentityAndZero) {
  auto id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.invariant_factors, (std::vector<Integer>{1, 1, 1}));
  auto zero = smith_normal_form(IntMatrix(1, 1));
  EXPECT_EQ(zero.invariant_factors, (std::vector<Integer>{0}));
  EXPECT_EQ(zero.rank, 0u);
}

TEST(Smith, RandomMatricesSatisfyContract) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix a = random_matrix(rng, dim(rng), dim(rng), 9);
    expect_valid_snf(a, smith_normal_form(a));
  }
}

TEST(Smith, BigIntegerFallback) {
  Integer big = Integer(1) << 80;
  IntMatrix a = IntMatrix::from_rows({{big, 3}, {5, big + 1}});
  auto snf = smith_normal_form(a);
  expect_valid_snf(a, snf);
  EXPECT_EQ(snf.invariant_factors[0], 1);
  EXPECT_EQ(abs_value(snf.invariant_factors[1]), abs_value(determinant(a)));
}

TEST(Smith, ModularRingTracksBothSides) {
  ring::ModularRing z12(12);
  Matrix<std::int64_t> a = Matrix<std::int64_t>::from_rows({{4, 6, 3}, {8, 2, 0}});
  auto res = smith_reduce(z12, a, SmithOptions{true, true, true, true});
  auto mul = [&](const Matrix<std::int64_t>& x, const Matrix<std::int64_t>& y) {
    Matrix<std::int64_t> out(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < y.cols(); ++j)
        for (std::size_t k = 0; k < x.cols(); ++k) out(i, j) = (out(i, j) + x(i, k) * y(k, j)) % 12;
    return out;
  };
  auto s = mul(mul(res.U, a), res.V);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(s(i, j), i == j && i < res.pivots.size() ? res.pivots[i] : 0);
  EXPECT_EQ(mul(res.U, res.Uinv), Matrix<std::int64_t>::identity(2));
  EXPECT_EQ(mul(res.V, res.Vinv), Matrix<std::int64_t>::identity(3));
  for (auto p : res.pivots) EXPECT_EQ(12 % p, 0);
}

TEST(SolveModular, TwoXZeroModFour) {
  IntMatrix a = IntMatrix::from_rows({{2}});
  IntMatrix r = IntMatrix::from_rows({{4}});
  auto sol = solve_modular_linear(a, r, {0});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->particular[0] * 2 % 4, 0);
  ASSERT_EQ(sol->kernel.size(), 1u);
  EXPECT_EQ(abs_value(sol->kernel[0][0]), 2);
}

TEST(SolveModular, TwoXOneModFourHasNoSolution) {
  IntMatrix a = IntMatrix::from_rows({{2}});
  IntMatrix r = IntMatrix::from_rows({{4}});
  EXPECT_FALSE(solve_modular_linear(a, r, {1}).has_value());
}
