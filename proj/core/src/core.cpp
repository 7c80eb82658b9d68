#include "cappedlp/core.hpp"

#include <cmath>
#include <string>

#include "cappedlp/errors.hpp"
#include "cappedlp/scalar.hpp"

namespace cappedlp {

namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void check_x(const ProblemInstance& inst, const VectorRef& x) {
  if (static_cast<std::size_t>(x.size()) != inst.n())
    throw InputError("x has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(inst.n()));
}

}  // namespace

CappedParams::CappedParams(double p_, double gamma_) : p(p_), gamma(gamma_) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputError("capped l_p exponent p must be > 0");
  if (!(gamma > 0.0)) throw InputError("capped l_p scale gamma must be > 0");
}

std::size_t datafit_dimension(const DataFit& fit) {
  struct Visitor {
    std::size_t operator()(const LeastSquares& f) const {
      if (f.A.rows() != f.b.size())
        throw InputError("least squares A is " + dims(f.A.rows(), f.A.cols()) +
                         " but b has length " + std::to_string(f.b.size()));
      return static_cast<std::size_t>(f.A.cols());
    }
    std::size_t operator()(const L0Affine& f) const {
      if (f.A.rows() != f.b.size())
        throw InputError("l0 affine A is " + dims(f.A.rows(), f.A.cols()) +
                         " but b has length " + std::to_string(f.b.size()));
      return static_cast<std::size_t>(f.A.cols());
    }
    std::size_t operator()(const IndicatorFiniteSet& f) const {
      if (f.points.empty()) throw InputError("indicator set needs at least one point");
      const auto n = f.points.front().size();
      for (const auto& pt : f.points)
        if (pt.size() != n) throw InputError("indicator set points have mixed lengths");
      return static_cast<std::size_t>(n);
    }
  };
  return std::visit(Visitor{}, fit);
}

ProblemInstance::ProblemInstance(DataFit datafit, Matrix B, double lambda, double p)
    : datafit_(std::move(datafit)), B_(std::move(B)), lambda_(lambda), p_(p) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw InputError("lambda must be > 0");
  if (!(p_ > 0.0) || !std::isfinite(p_)) throw InputError("p must be > 0");
  const std::size_t n = datafit_dimension(datafit_);
  if (static_cast<std::size_t>(B_.cols()) != n)
    throw InputError("B is " + dims(B_.rows(), B_.cols()) + " but the data fit acts on R^" +
                     std::to_string(n));
}

ProblemInstance ProblemInstance::with_lambda(double lambda) const {
  return ProblemInstance(datafit_, B_, lambda, p_);
}

std::size_t count_nonzeros(const VectorRef& y, double tol_zero) {
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) > tol_zero) ++count;
  return count;
}

double eval_datafit(const DataFit& fit, const VectorRef& x, double tol_zero) {
  if (static_cast<std::size_t>(x.size()) != datafit_dimension(fit))
    throw InputError("x has length " + std::to_string(x.size()) +
                     " which does not match the data fit");
  struct Visitor {
    const VectorRef& x;
    double tol_zero;
    double operator()(const LeastSquares& f) const { return (f.A * x - f.b).squaredNorm(); }
    double operator()(const L0Affine& f) const {
      return static_cast<double>(count_nonzeros(f.A * x - f.b, tol_zero));
    }
    double operator()(const IndicatorFiniteSet& f) const {
      for (const auto& pt : f.points)
        if (x.size() == 0 || (pt - x).cwiseAbs().maxCoeff() <= tol_zero) return 0.0;
      return kInfinity;
    }
  };
  return std::visit(Visitor{x, tol_zero}, fit);
}

double eval_Phi(const ProblemInstance& inst, const VectorRef& x, double tol_zero) {
  if (tol_zero < 0.0) throw InputError("tol_zero must be >= 0");
  check_x(inst, x);
  const double fit = eval_datafit(inst.datafit(), x, tol_zero);
  return fit + inst.lambda() * static_cast<double>(count_nonzeros(inst.B() * x, tol_zero));
}

double eval_Psi(const ProblemInstance& inst, const VectorRef& x, double gamma,
                double tol_zero) {
  const CappedParams params(inst.p(), gamma);
  check_x(inst, x);
  const double fit = eval_datafit(inst.datafit(), x, tol_zero);
  return fit + inst.lambda() * psi(inst.B() * x, params);
}

double eval_split_objective(const ProblemInstance& inst, const SplitPoint& pt, double gamma,
                            double tol_zero) {
  const CappedParams params(inst.p(), gamma);
  check_x(inst, pt.x);
  if (static_cast<std::size_t>(pt.v.size()) != inst.m())
    throw InputError("v has length " + std::to_string(pt.v.size()) + ", expected " +
                     std::to_string(inst.m()));
  const Vector r = inst.B() * pt.x - pt.v;
  double penalty = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) penalty += abs_pow(r[i], params.p);
  const double fit = eval_datafit(inst.datafit(), pt.x, tol_zero);
  return fit + inst.lambda() * params.gamma * penalty +
         inst.lambda() * static_cast<double>(count_nonzeros(pt.v, tol_zero));
}

}  // namespace cappedlp
