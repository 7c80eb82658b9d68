#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cappedlp/core.hpp"

namespace cappedlp {

struct SolverConfig {
  std::size_t max_iters = 10000;
  double rel_tol = 1e-10;      ///< stop when the split objective changes by <= rel_tol * max(1, |f|)
  double gamma0 = 1e-2;
  double gamma_factor = 4.0;
  double gamma_max = 1e8;
  double tol_zero = kDefaultTolZero;

  /// Throws InputError on an inconsistent configuration.
  void validate() const;
};

struct SolveReport {
  Vector x;
  Vector v;
  double split_value = 0.0;
  double psi_value = 0.0;
  double gamma = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Split objective after the initial v-update and after every iteration.
  std::vector<double> trace;
};

/// kPolish: once the support S of v repeats, x jumps to the minimizer of
/// ||A x - b||^2 + lambda gamma ||B_{S^c} x||^2 (the limit of the x-updates
/// for that support) with v_S = (B x)_S. It never increases the objective.
enum class BcdStep { kInitial, kXUpdate, kVUpdate, kPolish };

/// Called after every half-step with the current iterate and split objective.
using BcdObserver = std::function<void(BcdStep, const SplitPoint&, double)>;

/// Block coordinate descent on
///   ||A x - b||^2 + lambda gamma ||B x - v||_2^2 + lambda ||v||_0
/// alternating an exact v-update (coordinatewise hard threshold at
/// gamma^{-1/2}) and an exact x-update (regularized least squares), with a
/// support polish step when the support of v settles.
/// Requires a least-squares fit and p = 2. x0 defaults to the min-norm
/// least-squares solution of A x = b.
SolveReport bcd_solve(const ProblemInstance& inst, double gamma, const SolverConfig& cfg = {},
                      const std::optional<Vector>& x0 = std::nullopt,
                      const BcdObserver& observer = {});

/// Min-norm least-squares point with (B x)_i = 0 wherever v_i == 0.
Vector support_refit(const ProblemInstance& inst, const VectorRef& v);

/// gamma_k = gamma0 * gamma_factor^k for all gamma_k <= gamma_max.
std::vector<double> gamma_schedule(const SolverConfig& cfg);

struct ContinuationPath {
  std::vector<SolveReport> reports;
  /// support_refit of the final stage.
  Vector candidate;
  double candidate_phi = 0.0;
};

/// Runs bcd_solve along gamma_schedule(cfg), warm-starting each stage from the
/// previous x.
ContinuationPath continuation_solve(const ProblemInstance& inst, const SolverConfig& cfg = {},
                                    const std::optional<Vector>& x0 = std::nullopt);

}  // namespace cappedlp
