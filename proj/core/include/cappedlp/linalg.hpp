#pragma once

#include <cstddef>
#include <cstdint>

#include "cappedlp/core.hpp"

namespace cappedlp {

/// Relative cutoff: singular values <= rank_tol * sigma_max count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// Largest row count accepted by sigma_subset_min (2^m - 1 subsets).
inline constexpr std::size_t kSigmaSubsetCap = 16;

struct LeastSquaresSolution {
  Vector x;
  double residual;  // ||A x - b||_2^2 at the returned x
};

/// Orthonormal basis Xi (n x dim) of ker(A).
struct NullBasis {
  Matrix Xi;
  std::size_t dim = 0;
};

/// Factor once, then return the minimum-norm least-squares solution for any
/// right-hand side.
class MinNormLeastSquares {
 public:
  explicit MinNormLeastSquares(const MatrixRef& A, double rank_tol = kDefaultRankTol);

  Vector solve(const VectorRef& rhs) const;
  std::size_t rank() const noexcept { return static_cast<std::size_t>(rank_); }

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  Eigen::Index rank_ = 0;
  Matrix U_;
  Matrix V_;
  Vector inv_sv_;
};

/// Minimum-norm minimizer of ||A x - b||_2.
LeastSquaresSolution least_squares(const MatrixRef& A, const VectorRef& b,
                                   double rank_tol = kDefaultRankTol);

NullBasis null_space_basis(const MatrixRef& A, double rank_tol = kDefaultRankTol);

/// Minimum-norm minimizer of ||A x - b||_2^2 subject to Ceq x = 0.
/// Ceq may have zero rows.
LeastSquaresSolution constrained_least_squares(const MatrixRef& A, const VectorRef& b,
                                               const MatrixRef& Ceq,
                                               double rank_tol = kDefaultRankTol);

struct AffineLeastSquaresSolution {
  bool feasible = false;
  Vector x;
  double residual = kInfinity;
};

/// Minimum-norm minimizer of ||C x - d||_2^2 over {x : E x = f}. The
/// constraint is declared infeasible when the least-squares residual of
/// E x = f exceeds feas_tol * (1 + ||f||).
AffineLeastSquaresSolution affine_constrained_least_squares(
    const MatrixRef& C, const VectorRef& d, const MatrixRef& E, const VectorRef& f,
    double feas_tol = 1e-8, double rank_tol = kDefaultRankTol);

/// Smallest singular value above rank_tol * sigma_max(A); 0 when A == 0.
double min_nonzero_singular_value(const MatrixRef& A, double rank_tol = kDefaultRankTol);

/// sigma(M): the minimum over nonempty row subsets L with M_L != 0 of the
/// smallest nonzero singular value of M_L. Singular values and zero
/// submatrices are judged against rank_tol * sigma_max(M).
/// Throws DomainError for M == 0 and CapacityError when rows > kSigmaSubsetCap.
double sigma_subset_min(const MatrixRef& M, double rank_tol = kDefaultRankTol);

/// Rows of M selected by a bitmask (bit i -> row i).
Matrix select_rows(const MatrixRef& M, std::uint64_t mask);

}  // namespace cappedlp
