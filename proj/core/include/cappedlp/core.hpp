#pragma once

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace cappedlp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorRef = Eigen::Ref<const Vector>;
using MatrixRef = Eigen::Ref<const Matrix>;

/// Entries with magnitude at or below this are counted as zero by default.
inline constexpr double kDefaultTolZero = 1e-9;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponent and scale of the capped l_p function t -> min(gamma |t|^p, 1).
struct CappedParams {
  double p;
  double gamma;

  /// Throws InputError unless p > 0 and gamma > 0.
  CappedParams(double p, double gamma);
};

/// phi(x) = ||A x - b||_2^2
struct LeastSquares {
  Matrix A;
  Vector b;
};

/// phi(x) = ||A x - b||_0
struct L0Affine {
  Matrix A;
  Vector b;
};

/// phi = indicator of a finite point set (0 on the set, +inf elsewhere).
struct IndicatorFiniteSet {
  std::vector<Vector> points;
};

using DataFit = std::variant<LeastSquares, L0Affine, IndicatorFiniteSet>;

/// Number of unknowns the data fit acts on. Throws InputError when the fit
/// is internally inconsistent.
std::size_t datafit_dimension(const DataFit& fit);

/// The tuple (phi, B, lambda, p) defining
///   Phi(x)     = phi(x) + lambda ||B x||_0
///   Psi_g(x)   = phi(x) + lambda psi_g(B x).
/// Immutable once built; the constructor validates every dimension.
class ProblemInstance {
 public:
  ProblemInstance(DataFit datafit, Matrix B, double lambda, double p);

  const DataFit& datafit() const noexcept { return datafit_; }
  const Matrix& B() const noexcept { return B_; }
  double lambda() const noexcept { return lambda_; }
  double p() const noexcept { return p_; }

  std::size_t n() const noexcept { return static_cast<std::size_t>(B_.cols()); }
  std::size_t m() const noexcept { return static_cast<std::size_t>(B_.rows()); }

  /// Copy with a different regularization weight.
  ProblemInstance with_lambda(double lambda) const;

  bool is_least_squares() const noexcept {
    return std::holds_alternative<LeastSquares>(datafit_);
  }

 private:
  DataFit datafit_;
  Matrix B_;
  double lambda_;
  double p_;
};

/// Point of the two-variable split problem: x in R^n, auxiliary v in R^m.
struct SplitPoint {
  Vector x;
  Vector v;
};

/// Number of entries with |y_i| > tol_zero.
std::size_t count_nonzeros(const VectorRef& y, double tol_zero = kDefaultTolZero);

/// phi(x). Indicator fits return +inf off the set; membership is decided
/// coordinatewise within tol_zero.
double eval_datafit(const DataFit& fit, const VectorRef& x,
                    double tol_zero = kDefaultTolZero);

/// Phi(x) = phi(x) + lambda ||B x||_0.
double eval_Phi(const ProblemInstance& inst, const VectorRef& x,
                double tol_zero = kDefaultTolZero);

/// Psi_gamma(x) = phi(x) + lambda psi_gamma(B x), using the instance's p.
double eval_Psi(const ProblemInstance& inst, const VectorRef& x, double gamma,
                double tol_zero = kDefaultTolZero);

/// phi(x) + lambda gamma ||B x - v||_p^p + lambda ||v||_0.
double eval_split_objective(const ProblemInstance& inst, const SplitPoint& pt,
                            double gamma, double tol_zero = kDefaultTolZero);

}  // namespace cappedlp
