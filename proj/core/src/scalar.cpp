#include "cappedlp/scalar.hpp"

#include <algorithm>
#include <cmath>

namespace cappedlp {

double abs_pow(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::exp(p * std::log(std::abs(t)));
}

double varphi(double t, const CappedParams& params) {
  return std::min(params.gamma * abs_pow(t, params.p), 1.0);
}

double psi(const VectorRef& y, const CappedParams& params) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) total += varphi(y[i], params);
  return total;
}

SplitArgmin scalar_split_argmin(double t, const CappedParams& params) {
  // v = 0 costs gamma |t|^p, v = t costs 1; anything else is dominated.
  const double cost_zero = params.gamma * abs_pow(t, params.p);
  if (cost_zero > 1.0) return {t, 1.0};
  return {0.0, cost_zero};
}

double marginal_Ft(double t, double lambda, double p) {
  if (t == 0.0) return 0.0;
  const double tp = abs_pow(t, p);
  return lambda > tp ? tp : lambda;
}

Vector split_argmin(const VectorRef& y, const CappedParams& params) {
  Vector v(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) v[i] = scalar_split_argmin(y[i], params).v_star;
  return v;
}

}  // namespace cappedlp
