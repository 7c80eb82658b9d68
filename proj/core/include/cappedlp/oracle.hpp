#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cappedlp/core.hpp"
#include "cappedlp/linalg.hpp"

namespace cappedlp {

/// Exhaustive oracles are correctness anchors for desk-scale instances:
/// they enumerate 2^m (or 2^(t+m)) support patterns and refuse beyond these.
inline constexpr std::size_t kOracleRowCap = 14;
inline constexpr std::size_t kL0L0RowCap = 18;

/// Bit i set <=> row i belongs to the set.
using RowMask = std::uint64_t;

/// Which rows vanish at a representative. zero_rows refers to B x for the
/// l0 problems and to the auxiliary v for the split problems; fit_rows lists
/// the rows with (A x - b)_i == 0 and is only populated for l0-affine fits.
struct SupportPattern {
  RowMask zero_rows = 0;
  RowMask fit_rows = 0;

  auto operator<=>(const SupportPattern&) const = default;
};

struct OracleMinimizer {
  Vector x;
  SupportPattern pattern;
};

/// Global minimum and one minimum-norm representative per optimal pattern,
/// listed in increasing pattern order.
struct OracleResult {
  bool feasible = true;
  double value = kInfinity;
  std::vector<OracleMinimizer> minimizers;
};

struct OracleOptions {
  double tol_zero = kDefaultTolZero;
  /// Candidates within tie_rel_tol * (1 + |value|) of the minimum are reported.
  double tie_rel_tol = 1e-9;
  /// Linear systems count as solvable when the LS residual norm is at most
  /// feas_tol * (1 + ||rhs||).
  double feas_tol = 1e-8;
  double rank_tol = kDefaultRankTol;
};

/// Exact global minimum of Phi for every data fit.
OracleResult oracle_min_Phi(const ProblemInstance& inst, const OracleOptions& opts = {});

/// Exact global minimum of Psi_gamma. Supported: least squares and l0-affine
/// fits with p = 2, and finite indicator sets for any p.
OracleResult oracle_min_Psi(const ProblemInstance& inst, double gamma,
                            const OracleOptions& opts = {});

/// min{ phi(x) : ||B x||_0 <= k }. Returns feasible = false when no point of
/// dom(phi) meets the constraint.
OracleResult oracle_constrained_Phi(const ProblemInstance& inst, std::size_t k,
                                    const OracleOptions& opts = {});

/// min ||A x - b||_0 + lambda ||B x||_0.
OracleResult oracle_min_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                             double lambda, double tol_zero = kDefaultTolZero);
OracleResult oracle_min_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                             double lambda, const OracleOptions& opts);

/// min ||A x - b||_0 + lambda ||v||_0 + lambda gamma ||B x - v||_2^2 over (x, v).
/// Representatives carry the optimal v implicitly (v = split argmin of B x);
/// pattern.zero_rows lists where v vanishes.
OracleResult oracle_min_l0l0_split(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                                   double lambda, double gamma, const OracleOptions& opts = {});

/// Indices of set bits in increasing order.
std::vector<std::size_t> mask_indices(RowMask mask);

}  // namespace cappedlp
