#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cappedlp/errors.hpp"
#include "cappedlp/oracle.hpp"
#include "cappedlp/random.hpp"
#include "support/brute_force.hpp"

using namespace cappedlp;
using namespace cappedlp::testing;

namespace {

ProblemInstance worked(double lambda = 0.5) {
  return ProblemInstance(LeastSquares{Matrix::Identity(2, 2), Vector::Unit(2, 0)},
                         Matrix::Identity(2, 2), lambda, 2.0);
}

Matrix scalar_matrix(double a) { return Matrix::Constant(1, 1, a); }
Vector scalar_vector(double a) { return Vector::Constant(1, a); }

}  // namespace

TEST(OracleMinPhi, WorkedExample) {
  auto res = oracle_min_Phi(worked(0.5));
  EXPECT_NEAR(res.value, 0.5, 1e-12);
  ASSERT_EQ(res.minimizers.size(), 1u);
  EXPECT_TRUE(res.minimizers[0].x.isApprox(Vector::Unit(2, 0)));

  res = oracle_min_Phi(worked(2.0));
  EXPECT_NEAR(res.value, 1.0, 1e-12);
  ASSERT_EQ(res.minimizers.size(), 1u);
  EXPECT_LE(res.minimizers[0].x.norm(), 1e-12);
}

TEST(OracleMinPhi, TieReportsEveryPattern) {
  // lambda = 1: x = (1,0) and x = 0 both score 1.
  const auto res = oracle_min_Phi(worked(1.0));
  EXPECT_NEAR(res.value, 1.0, 1e-12);
  EXPECT_EQ(res.minimizers.size(), 2u);
}

TEST(OracleMinPhi, ZeroBGivesLeastSquares) {
  std::mt19937_64 rng(21);
  const Matrix A = uniform_matrix(rng, 4, 3);
  const Vector b = uniform_vector(rng, 4);
  const ProblemInstance inst(LeastSquares{A, b}, Matrix::Zero(2, 3), 1.0, 2.0);
  const auto res = oracle_min_Phi(inst);
  const auto ls = least_squares(A, b);
  EXPECT_NEAR(res.value, ls.residual, 1e-12);
  EXPECT_TRUE(res.minimizers.front().x.isApprox(ls.x, 1e-10));
}

TEST(OracleMinPhi, CapacityError) {
  const ProblemInstance inst(LeastSquares{Matrix::Identity(2, 2), Vector::Zero(2)},
                             Matrix::Ones(kOracleRowCap + 1, 2), 1.0, 2.0);
  EXPECT_THROW(oracle_min_Phi(inst), CapacityError);
  EXPECT_THROW(oracle_min_Psi(inst, 1.0), CapacityError);
}

TEST(OracleMinPhi, IndicatorScansPoints) {
  Vector a(2), c(2);
  a << 1.0, 0.0;
  c << 3.0, 3.0;
  const ProblemInstance inst(IndicatorFiniteSet{{c, a}}, Matrix::Identity(2, 2), 1.0, 2.0);
  const auto res = oracle_min_Phi(inst);
  EXPECT_DOUBLE_EQ(res.value, 1.0);
  ASSERT_EQ(res.minimizers.size(), 1u);
  EXPECT_EQ(res.minimizers[0].x, a);
}

TEST(OracleMinPhi, RandomAgainstIndependentEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const auto n = std::uniform_int_distribution<int>(1, 5)(rng);
    const auto m = std::uniform_int_distribution<int>(1, 5)(rng);
    const auto r = std::uniform_int_distribution<int>(1, 5)(rng);
    const Matrix A = uniform_matrix(rng, r, n);
    const Vector b = uniform_vector(rng, r);
    const Matrix B = uniform_matrix(rng, m, n);
    const double lambda = std::exp(std::uniform_real_distribution<double>(-3.0, 1.0)(rng));
    const ProblemInstance inst(LeastSquares{A, b}, B, lambda, 2.0);
    const auto res = oracle_min_Phi(inst);
    EXPECT_NEAR(res.value, brute_min_Phi(A, b, B, lambda), 1e-9) << "seed " << seed;
    ASSERT_FALSE(res.minimizers.empty());
    for (const auto& rep : res.minimizers)
      EXPECT_NEAR(eval_Phi(inst, rep.x), res.value, 1e-9 * (1.0 + res.value));
  }
}

TEST(OracleMinPhi, CardinalityMonotoneInLambda) {
  // For lambda' < lambda'': ||B x'||_0 >= ||B x''||_0 and phi(x') <= phi(x'').
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = random_least_squares_instance(3, 4, 3, 1.0, 100 + seed);
    const double grid[] = {1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0};
    for (std::size_t i = 0; i + 1 < std::size(grid); ++i) {
      const auto lo = oracle_min_Phi(inst.with_lambda(grid[i]));
      const auto hi = oracle_min_Phi(inst.with_lambda(grid[i + 1]));
      for (const auto& x1 : lo.minimizers) {
        for (const auto& x2 : hi.minimizers) {
          EXPECT_GE(count_nonzeros(inst.B() * x1.x), count_nonzeros(inst.B() * x2.x));
          EXPECT_LE(eval_datafit(inst.datafit(), x1.x),
                    eval_datafit(inst.datafit(), x2.x) + 1e-9);
        }
      }
    }
  }
}

TEST(OracleMinPsi, LimitsInGamma) {
  const auto inst = worked(0.5);
  EXPECT_NEAR(oracle_min_Psi(inst, 1e8).value, 0.5, 1e-6);
  EXPECT_NEAR(oracle_min_Psi(inst, 1e-8).value, 0.0, 1e-6);
  double prev = -1.0;
  for (double g : {1e-2, 1e-1, 1.0, 10.0, 100.0}) {
    const double v = oracle_min_Psi(inst, g).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(OracleMinPsi, UnsupportedExponent) {
  const ProblemInstance inst(LeastSquares{Matrix::Identity(2, 2), Vector::Zero(2)},
                             Matrix::Identity(2, 2), 1.0, 1.0);
  EXPECT_THROW(oracle_min_Psi(inst, 1.0), UnsupportedError);
  const ProblemInstance ind(IndicatorFiniteSet{{Vector::Ones(2)}}, Matrix::Identity(2, 2), 1.0,
                            0.5);
  EXPECT_NEAR(oracle_min_Psi(ind, 1.0).value, 2.0, 1e-15);
}

TEST(OracleMinPsi, RandomAgainstNormalEquations) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(500 + seed);
    const Matrix A = uniform_matrix(rng, 3, 4);
    const Vector b = uniform_vector(rng, 3);
    const Matrix B = uniform_matrix(rng, 3, 4);
    const ProblemInstance inst(LeastSquares{A, b}, B, 0.2, 2.0);
    double prev = -1.0;
    for (double g : {1e-2, 0.1, 1.0, 10.0, 100.0, 1e4}) {
      const auto res = oracle_min_Psi(inst, g);
      EXPECT_NEAR(res.value, brute_min_Psi(A, b, B, 0.2, g), 1e-8 * (1.0 + res.value));
      EXPECT_LE(res.value, oracle_min_Phi(inst).value + 1e-12);
      EXPECT_GE(res.value, prev - 1e-12);
      prev = res.value;
      for (const auto& rep : res.minimizers)
        EXPECT_NEAR(eval_Psi(inst, rep.x, g), res.value, 1e-9 * (1.0 + res.value));
    }
  }
}

TEST(OracleConstrained, Examples) {
  const auto inst = worked();
  EXPECT_NEAR(oracle_constrained_Phi(inst, 2).value, 0.0, 1e-14);
  const auto k0 = oracle_constrained_Phi(inst, 0);
  EXPECT_NEAR(k0.value, 1.0, 1e-14);
  EXPECT_LE(k0.minimizers.front().x.norm(), 1e-14);
  EXPECT_THROW(oracle_constrained_Phi(inst, 3), InputError);
}

TEST(OracleConstrained, NonincreasingInK) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = random_least_squares_instance(4, 5, 3, 1.0, 900 + seed);
    double prev = kInfinity;
    for (std::size_t k = 0; k <= inst.m(); ++k) {
      const auto res = oracle_constrained_Phi(inst, k);
      ASSERT_TRUE(res.feasible);
      EXPECT_LE(res.value, prev + 1e-12);
      for (const auto& rep : res.minimizers) EXPECT_LE(count_nonzeros(inst.B() * rep.x), k);
      prev = res.value;
    }
  }
}

TEST(OracleConstrained, IndicatorInfeasible) {
  const ProblemInstance inst(IndicatorFiniteSet{{Vector::Ones(2)}}, Matrix::Identity(2, 2), 1.0,
                             2.0);
  EXPECT_FALSE(oracle_constrained_Phi(inst, 1).feasible);
  EXPECT_TRUE(oracle_constrained_Phi(inst, 2).feasible);
}

TEST(OracleL0L0, Examples) {
  std::mt19937_64 rng(3);
  const Matrix A = uniform_matrix(rng, 2, 3);
  const Matrix B = uniform_matrix(rng, 2, 3);
  auto res = oracle_min_l0l0(A, Vector::Zero(2), B, 0.7);
  EXPECT_DOUBLE_EQ(res.value, 0.0);

  res = oracle_min_l0l0(scalar_matrix(1), scalar_vector(1), scalar_matrix(1), 1.0);
  EXPECT_DOUBLE_EQ(res.value, 1.0);
  EXPECT_EQ(res.minimizers.size(), 2u);

  res = oracle_min_l0l0(scalar_matrix(1), scalar_vector(1), scalar_matrix(1), 3.0);
  EXPECT_DOUBLE_EQ(res.value, 1.0);
  ASSERT_EQ(res.minimizers.size(), 1u);
  EXPECT_DOUBLE_EQ(res.minimizers[0].x[0], 0.0);
}

TEST(OracleL0L0, CapacityError) {
  EXPECT_THROW(oracle_min_l0l0(Matrix::Ones(10, 2), Vector::Ones(10), Matrix::Ones(9, 2), 1.0),
               CapacityError);
}

TEST(OracleL0L0, RandomAgainstLuEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(700 + seed);
    const Matrix A = sparse_matrix(rng, 3, 3, 0.6);
    const Vector b = uniform_vector(rng, 3);
    const Matrix B = sparse_matrix(rng, 3, 3, 0.6);
    const double lambda = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const auto res = oracle_min_l0l0(A, b, B, lambda);
    EXPECT_NEAR(res.value, brute_min_l0l0(A, b, B, lambda), 1e-12) << "seed " << seed;
    const ProblemInstance inst(L0Affine{A, b}, B, lambda, 2.0);
    EXPECT_NEAR(oracle_min_Phi(inst).value, res.value, 1e-12);
    for (const auto& rep : res.minimizers) EXPECT_NEAR(eval_Phi(inst, rep.x), res.value, 1e-12);
  }
}

TEST(OracleL0L0Split, RandomAgainstLuEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(800 + seed);
    const Matrix A = sparse_matrix(rng, 2, 3, 0.7);
    const Vector b = uniform_vector(rng, 2);
    const Matrix B = sparse_matrix(rng, 3, 3, 0.7);
    for (double g : {0.1, 1.0, 10.0, 1e3}) {
      const auto res = oracle_min_l0l0_split(A, b, B, 0.5, g);
      EXPECT_NEAR(res.value, brute_min_l0l0_split(A, b, B, 0.5, g), 1e-8 * (1.0 + res.value))
          << "seed " << seed << " gamma " << g;
    }
  }
}

TEST(MaskIndices, Basic) {
  EXPECT_EQ(mask_indices(0b1011), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_TRUE(mask_indices(0).empty());
}
