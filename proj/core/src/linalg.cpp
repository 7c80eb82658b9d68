#include "cappedlp/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "cappedlp/errors.hpp"

namespace cappedlp {

namespace {

using Svd = Eigen::JacobiSVD<Matrix>;

double sigma_max(const Svd& svd) {
  const auto& s = svd.singularValues();
  return s.size() == 0 ? 0.0 : s[0];
}

std::size_t numerical_rank(const Svd& svd, double rank_tol) {
  const auto& s = svd.singularValues();
  const double cutoff = rank_tol * sigma_max(svd);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff && s[i] > 0.0) ++rank;
  return rank;
}

}  // namespace

Matrix select_rows(const MatrixRef& M, std::uint64_t mask) {
  Matrix out(std::popcount(mask), M.cols());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    if (mask >> i & 1u) out.row(k++) = M.row(i);
  return out;
}

MinNormLeastSquares::MinNormLeastSquares(const MatrixRef& A, double rank_tol)
    : rows_(A.rows()), cols_(A.cols()) {
  if (rows_ == 0 || cols_ == 0) return;
  Svd svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  rank_ = static_cast<Eigen::Index>(numerical_rank(svd, rank_tol));
  U_ = svd.matrixU().leftCols(rank_);
  V_ = svd.matrixV().leftCols(rank_);
  inv_sv_ = svd.singularValues().head(rank_).cwiseInverse();
}

Vector MinNormLeastSquares::solve(const VectorRef& rhs) const {
  if (rhs.size() != rows_)
    throw InputError("MinNormLeastSquares: rhs has length " + std::to_string(rhs.size()) +
                     ", expected " + std::to_string(rows_));
  if (rank_ == 0) return Vector::Zero(cols_);
  return V_ * (inv_sv_.asDiagonal() * (U_.transpose() * rhs));
}

LeastSquaresSolution least_squares(const MatrixRef& A, const VectorRef& b, double rank_tol) {
  if (A.rows() != b.size())
    throw InputError("least_squares: A has " + std::to_string(A.rows()) +
                     " rows but b has length " + std::to_string(b.size()));
  Vector x = MinNormLeastSquares(A, rank_tol).solve(b);
  const double residual = (A * x - b).squaredNorm();
  return {std::move(x), residual};
}

NullBasis null_space_basis(const MatrixRef& A, double rank_tol) {
  if (!(rank_tol > 0.0)) throw InputError("rank_tol must be > 0");
  const Eigen::Index n = A.cols();
  if (A.rows() == 0 || n == 0) return {Matrix::Identity(n, n), static_cast<std::size_t>(n)};

  Svd svd(A, Eigen::ComputeFullV);
  const auto rank = static_cast<Eigen::Index>(numerical_rank(svd, rank_tol));
  NullBasis out;
  out.Xi = svd.matrixV().rightCols(n - rank);
  out.dim = static_cast<std::size_t>(n - rank);
  return out;
}

LeastSquaresSolution constrained_least_squares(const MatrixRef& A, const VectorRef& b,
                                               const MatrixRef& Ceq, double rank_tol) {
  if (Ceq.rows() > 0 && Ceq.cols() != A.cols())
    throw InputError("constrained_least_squares: Ceq has " + std::to_string(Ceq.cols()) +
                     " columns, expected " + std::to_string(A.cols()));
  if (Ceq.rows() == 0) return least_squares(A, b, rank_tol);

  // Solve on ker(Ceq); Xi is orthonormal so the min-norm property carries over.
  const NullBasis kernel = null_space_basis(Ceq, rank_tol);
  if (kernel.dim == 0) return {Vector::Zero(A.cols()), b.squaredNorm()};
  const Matrix AZ = A * kernel.Xi;
  const LeastSquaresSolution reduced = least_squares(AZ, b, rank_tol);
  Vector x = kernel.Xi * reduced.x;
  const double residual = (A * x - b).squaredNorm();
  return {std::move(x), residual};
}

AffineLeastSquaresSolution affine_constrained_least_squares(const MatrixRef& C,
                                                            const VectorRef& d,
                                                            const MatrixRef& E,
                                                            const VectorRef& f,
                                                            double feas_tol,
                                                            double rank_tol) {
  const Eigen::Index n = C.cols();
  if (C.rows() != d.size() || E.rows() != f.size() || (E.rows() > 0 && E.cols() != n))
    throw InputError("affine_constrained_least_squares: inconsistent dimensions");

  Vector x0 = Vector::Zero(n);
  Matrix Z = Matrix::Identity(n, n);
  if (E.rows() > 0) {
    const LeastSquaresSolution particular = least_squares(E, f, rank_tol);
    if (std::sqrt(particular.residual) > feas_tol * (1.0 + f.norm())) return {};
    x0 = particular.x;
    Z = null_space_basis(E, rank_tol).Xi;
  }
  AffineLeastSquaresSolution out;
  out.feasible = true;
  if (Z.cols() == 0) {
    out.x = x0;
  } else {
    // x0 lies in row(E), orthogonal to Z, so x0 + Z y is min-norm when y is.
    const LeastSquaresSolution reduced = least_squares(C * Z, d - C * x0, rank_tol);
    out.x = x0 + Z * reduced.x;
  }
  out.residual = (C * out.x - d).squaredNorm();
  return out;
}

double min_nonzero_singular_value(const MatrixRef& A, double rank_tol) {
  if (A.size() == 0) return 0.0;
  Svd svd(A);
  const auto rank = numerical_rank(svd, rank_tol);
  return rank == 0 ? 0.0 : svd.singularValues()[static_cast<Eigen::Index>(rank) - 1];
}

double sigma_subset_min(const MatrixRef& M, double rank_tol) {
  const auto m = static_cast<std::size_t>(M.rows());
  if (m > kSigmaSubsetCap)
    throw CapacityError("sigma_subset_min: " + std::to_string(m) + " rows exceeds cap of " +
                        std::to_string(kSigmaSubsetCap));
  if (M.size() == 0) throw DomainError("sigma is undefined for an empty matrix");
  const double scale = Svd(M).singularValues()[0];
  if (!(scale > 0.0)) throw DomainError("sigma is undefined for the zero matrix");
  const double cutoff = rank_tol * scale;

  double best = kInfinity;
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    const Svd svd(select_rows(M, mask));
    const auto& s = svd.singularValues();
    double smallest = kInfinity;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > cutoff) smallest = std::min(smallest, s[i]);
    // smallest stays infinite for a (numerically) zero submatrix, which is skipped.
    best = std::min(best, smallest);
  }
  return best;
}

}  // namespace cappedlp
