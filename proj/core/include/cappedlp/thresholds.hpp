#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cappedlp/core.hpp"
#include "cappedlp/linalg.hpp"
#include "cappedlp/oracle.hpp"

namespace cappedlp {

/// Exactness threshold over a finite set C: for every gamma > gamma_star the
/// minimizers of psi_gamma(B x) and ||B x||_0 over C coincide.
struct ThresholdReport {
  std::size_t k_star = 0;      ///< min over C of ||B x||_0
  std::optional<double> tau;   ///< min over C of the k*-th largest |(B x)_i|; empty when k* == 0
  double gamma_star = 0.0;     ///< 1 / tau^p, or 0 when k* == 0
};

ThresholdReport gamma_star_finite_C(const std::vector<Vector>& C, const MatrixRef& B, double p,
                                    double tol_zero = kDefaultTolZero);

/// Threshold for the l0-affine fit with p = 2: above gamma_star the split
/// problem and min ||A x - b||_0 + lambda ||B x||_0 share their minimizers.
struct L0L0ThresholdReport {
  double s = 0.0;              ///< min of ||A x - b||_0 + lambda ||v||_0 on {B x = v}
  std::optional<double> rho;   ///< min of ||B x - v||_2^2 where that objective is below s
  double gamma_star = 0.0;     ///< s / (lambda rho), or 0 when no such (x, v) exists
  std::size_t pieces = 0;      ///< number of feasible affine pieces examined
};

L0L0ThresholdReport gamma_star_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                                    double lambda, double p, const OracleOptions& opts = {});

/// Radius of a ball in ker(A) that contains the kernel component of some
/// minimizer of Psi_gamma for all gamma >= gamma0.
struct BoundCertificate {
  double U = 0.0;                    ///< sup ||B u||_inf over S1
  std::optional<double> sigma_BXi;   ///< sigma(B Xi); empty when B Xi == 0
  double radius = 0.0;
  std::size_t kernel_dim = 0;
  Matrix Xi;                         ///< orthonormal basis of ker(A)
};

/// Least-squares fits only. alpha must be at least min Phi.
BoundCertificate s1_s2_bound(const ProblemInstance& inst, double gamma0, double alpha,
                             double rank_tol = kDefaultRankTol);

/// Euclidean norm of the projection of x onto span(Xi) (Xi orthonormal).
double kernel_component_norm(const BoundCertificate& cert, const VectorRef& x);

}  // namespace cappedlp
