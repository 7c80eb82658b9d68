#pragma once

#include "cappedlp/core.hpp"

namespace cappedlp {

/// |t|^p, with 0 mapped to 0 for every p > 0.
double abs_pow(double t, double p);

/// Scalar capped l_p function: min(gamma |t|^p, 1).
double varphi(double t, const CappedParams& params);

/// Sum of varphi over the coordinates of y.
double psi(const VectorRef& y, const CappedParams& params);

struct SplitArgmin {
  double v_star;
  double value;
};

/// Minimizer of ||v||_0 + gamma |t - v|^p over v in R. Only v = 0 and v = t
/// can be optimal; on the tie gamma |t|^p == 1 the sparser v = 0 is returned.
SplitArgmin scalar_split_argmin(double t, const CappedParams& params);

/// F_t(lambda) = min_v |v - t|^p + lambda ||v||_0 = min(lambda, |t|^p).
/// Satisfies gamma * marginal_Ft(t, 1/gamma, p) == varphi(t).
double marginal_Ft(double t, double lambda, double p);

/// Coordinatewise split argmin: the v that attains psi(y) in the split form.
Vector split_argmin(const VectorRef& y, const CappedParams& params);

}  // namespace cappedlp
