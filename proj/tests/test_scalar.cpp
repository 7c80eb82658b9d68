#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cappedlp/errors.hpp"
#include "cappedlp/scalar.hpp"

using namespace cappedlp;

TEST(Varphi, Examples) {
  for (double p : {0.5, 1.0, 2.0}) EXPECT_DOUBLE_EQ(varphi(1.0, {p, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(varphi(0.0, {2.0, 3.0}), 0.0);
  EXPECT_DOUBLE_EQ(varphi(0.5, {2.0, 1.0}), 0.25);
  EXPECT_DOUBLE_EQ(varphi(-0.5, {2.0, 1.0}), 0.25);
}

TEST(AbsPow, FractionalExponentsAndZero) {
  EXPECT_DOUBLE_EQ(abs_pow(0.0, 0.5), 0.0);
  EXPECT_NEAR(abs_pow(-4.0, 0.5), 2.0, 1e-15);
  EXPECT_NEAR(abs_pow(3.0, 2.0), 9.0, 1e-14);
}

TEST(Psi, Examples) {
  Vector y(2);
  y << 2.0, 0.5;
  EXPECT_DOUBLE_EQ(psi(Vector::Zero(4), {2.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(psi(y, {2.0, 1.0}), 1.25);
}

TEST(Psi, LargeGammaCountsNonzeros) {
  Vector y(4);
  y << 1e-3, -2.0, 0.7, 5e-4;
  EXPECT_EQ(psi(y, {2.0, 1e12}), 4.0);
  EXPECT_EQ(psi(y, {1.0, 1e12}), 4.0);
}

TEST(ScalarSplitArgmin, Examples) {
  auto r = scalar_split_argmin(2.0, {2.0, 1.0});
  EXPECT_DOUBLE_EQ(r.v_star, 2.0);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  r = scalar_split_argmin(0.0, {2.0, 1.0});
  EXPECT_DOUBLE_EQ(r.v_star, 0.0);
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  r = scalar_split_argmin(0.5, {2.0, 1.0});
  EXPECT_DOUBLE_EQ(r.v_star, 0.0);
  EXPECT_DOUBLE_EQ(r.value, 0.25);
}

TEST(ScalarSplitArgmin, TieChoosesZero) {
  // gamma |t|^2 == 1 exactly.
  const auto r = scalar_split_argmin(0.5, {2.0, 4.0});
  EXPECT_DOUBLE_EQ(r.v_star, 0.0);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_DOUBLE_EQ(scalar_split_argmin(-1.0, {1.0, 1.0}).v_star, 0.0);
}

TEST(MarginalFt, Examples) {
  EXPECT_DOUBLE_EQ(marginal_Ft(0.0, 5.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(marginal_Ft(2.0, 1.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(marginal_Ft(0.5, 1.0, 2.0), 0.25);
}

TEST(ScalarGrid, IdentitiesAndShape) {
  for (double p : {0.5, 1.0, 2.0}) {
    for (double g : {0.5, 1.0, 2.0, 8.0}) {
      const CappedParams cp(p, g);
      double prev = -1.0;
      for (int k = 0; k <= 3000; ++k) {
        const double t = k * 1e-3;
        const double f = varphi(t, cp);
        EXPECT_GE(f, prev);
        EXPECT_EQ(f, varphi(-t, cp));
        EXPECT_LE(f, varphi(t, CappedParams(p, 2.0 * g)));
        EXPECT_NEAR(scalar_split_argmin(t, cp).value, f, 1e-14);
        EXPECT_NEAR(g * marginal_Ft(t, 1.0 / g, p), f, 1e-14);
        prev = f;
      }
    }
  }
}

TEST(ScalarRandom, PsiUpperBounds) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  std::bernoulli_distribution zero(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    Vector y(6);
    for (auto& e : y) e = zero(rng) ? 0.0 : unif(rng);
    for (double p : {0.5, 1.0, 2.0}) {
      for (double g : {0.1, 1.0, 10.0}) {
        const CappedParams cp(p, g);
        const double val = psi(y, cp);
        double lp = 0.0;
        for (double e : y) lp += abs_pow(e, p);
        EXPECT_LE(val, static_cast<double>(count_nonzeros(y)) + 1e-15);
        EXPECT_LE(val, g * lp + 1e-12);
        const Vector v = split_argmin(y, cp);
        double split = static_cast<double>(count_nonzeros(v));
        for (Eigen::Index i = 0; i < y.size(); ++i) split += g * abs_pow(y[i] - v[i], p);
        EXPECT_NEAR(split, val, 1e-12);
      }
    }
  }
}
