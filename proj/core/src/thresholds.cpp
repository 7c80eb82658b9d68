#include "cappedlp/thresholds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "cappedlp/errors.hpp"
#include "cappedlp/scalar.hpp"

namespace cappedlp {

ThresholdReport gamma_star_finite_C(const std::vector<Vector>& C, const MatrixRef& B, double p,
                                    double tol_zero) {
  if (C.empty()) throw InputError("gamma_star_finite_C: C must be nonempty");
  if (!(p > 0.0)) throw InputError("gamma_star_finite_C: p must be > 0");
  for (const auto& x : C)
    if (x.size() != B.cols()) throw InputError("gamma_star_finite_C: point length != B columns");
  if (B.size() == 0 || B.cwiseAbs().maxCoeff() == 0.0)
    throw InputError("gamma_star_finite_C: B must be nonzero");

  ThresholdReport report;
  report.k_star = static_cast<std::size_t>(B.rows());
  for (const auto& x : C) report.k_star = std::min(report.k_star, count_nonzeros(B * x, tol_zero));
  if (report.k_star == 0) return report;

  double tau = kInfinity;
  for (const auto& x : C) {
    std::vector<double> mags(static_cast<std::size_t>(B.rows()));
    const Vector Bx = B * x;
    for (Eigen::Index i = 0; i < Bx.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(Bx[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    tau = std::min(tau, mags[report.k_star - 1]);
  }
  report.tau = tau;
  report.gamma_star = 1.0 / abs_pow(tau, p);
  return report;
}

L0L0ThresholdReport gamma_star_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                                    double lambda, double p, const OracleOptions& opts) {
  if (p != 2.0) throw UnsupportedError("gamma_star_l0l0: the inner minimization needs p = 2");
  if (!(lambda > 0.0)) throw InputError("gamma_star_l0l0: lambda must be > 0");
  const OracleResult base = oracle_min_l0l0(A, b, B, lambda, opts);

  L0L0ThresholdReport report;
  report.s = base.value;
  const auto t = static_cast<std::size_t>(A.rows());
  const auto m = static_cast<std::size_t>(B.rows());
  const RowMask all_t = (RowMask{1} << t) - 1;
  const RowMask all_m = (RowMask{1} << m) - 1;
  const double strict_below = report.s - opts.tie_rel_tol * (1.0 + report.s);

  // {h < s} is a finite union of pieces {A_F x = b_F, v_{S^c} = 0} whose
  // nominal level (t - |F|) + lambda |S| is below s; g = ||B x - v||^2 is
  // minimized on each piece with v_S = (B x)_S.
  double rho = kInfinity;
  for (RowMask fit = 0; fit <= all_t; ++fit) {
    Matrix A_fit = select_rows(A, fit);
    Vector b_fit(std::popcount(fit));
    for (Eigen::Index i = 0, k = 0; i < b.size(); ++i)
      if (fit >> i & 1u) b_fit[k++] = b[i];
    for (RowMask support = 0; support <= all_m; ++support) {
      const double level = static_cast<double>(t - std::popcount(fit)) +
                           lambda * static_cast<double>(std::popcount(support));
      if (level >= strict_below) continue;
      const Matrix B_off = select_rows(B, all_m & ~support);
      const auto sol = affine_constrained_least_squares(B_off, Vector::Zero(B_off.rows()), A_fit,
                                                        b_fit, opts.feas_tol, opts.rank_tol);
      if (!sol.feasible) continue;
      ++report.pieces;
      rho = std::min(rho, sol.residual);
    }
  }
  if (std::isfinite(rho)) {
    report.rho = rho;
    report.gamma_star = report.s / (lambda * rho);
  }
  return report;
}

BoundCertificate s1_s2_bound(const ProblemInstance& inst, double gamma0, double alpha,
                             double rank_tol) {
  const auto* fit = std::get_if<LeastSquares>(&inst.datafit());
  if (fit == nullptr) throw UnsupportedError("s1_s2_bound: only least-squares fits are supported");
  if (!(gamma0 > 0.0)) throw InputError("s1_s2_bound: gamma0 must be > 0");

  const Matrix& A = fit->A;
  const Vector& b = fit->b;
  const Matrix& B = inst.B();
  const Eigen::Index n = A.cols();
  const auto m = static_cast<double>(inst.m());

  BoundCertificate cert;
  const NullBasis kernel = null_space_basis(A, rank_tol);
  cert.Xi = kernel.Xi;
  cert.kernel_dim = kernel.dim;

  // S1 = {u in ker(A)^perp : ||A u - b||^2 <= alpha}. With A = U diag(sv) V^T
  // restricted to its range, u = V z and ||A u - b||^2 = ||sv.*z - c||^2 + r_perp
  // where c = U^T b. So sv.*z = c + w with ||w|| <= beta, and the extreme of
  // a linear functional g^T z over that ellipsoid is |g^T (c./sv)| + beta ||g./sv||.
  const auto rank = static_cast<Eigen::Index>(n) - static_cast<Eigen::Index>(kernel.dim);
  if (rank > 0) {
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector sv = svd.singularValues().head(rank);
    const Matrix Ur = svd.matrixU().leftCols(rank);
    const Matrix Vr = svd.matrixV().leftCols(rank);
    const Vector c = Ur.transpose() * b;
    const double r_perp = (b - Ur * c).squaredNorm();
    const double beta_sq = alpha - r_perp;
    if (beta_sq < -1e-12 * (1.0 + std::abs(alpha)))
      throw InputError("s1_s2_bound: alpha is below the minimum of the data fit");
    const double beta = std::sqrt(std::max(beta_sq, 0.0));
    const Vector center = c.cwiseQuotient(sv);
    const Matrix G = B * Vr;  // row i is g_i^T
    for (Eigen::Index i = 0; i < G.rows(); ++i) {
      const Vector g = G.row(i).transpose();
      const double extreme = std::abs(g.dot(center)) + beta * g.cwiseQuotient(sv).norm();
      cert.U = std::max(cert.U, extreme);
    }
  } else if (b.squaredNorm() > alpha + 1e-12 * (1.0 + std::abs(alpha))) {
    throw InputError("s1_s2_bound: alpha is below the minimum of the data fit");
  }

  if (kernel.dim == 0) return cert;
  const Matrix BXi = B * kernel.Xi;
  const double scale = BXi.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(BXi).singularValues()[0];
  if (!(scale > rank_tol * std::max(1.0, B.norm()))) return cert;

  cert.sigma_BXi = sigma_subset_min(BXi, rank_tol);
  const double tau0 = 1.0 / abs_pow(gamma0, 1.0 / inst.p());
  cert.radius = std::sqrt(m) / *cert.sigma_BXi * (cert.U + tau0);
  return cert;
}

double kernel_component_norm(const BoundCertificate& cert, const VectorRef& x) {
  if (cert.kernel_dim == 0) return 0.0;
  return (cert.Xi.transpose() * x).norm();
}

}  // namespace cappedlp
