#pragma once

#include <cstddef>
#include <vector>

#include "cappedlp/core.hpp"
#include "cappedlp/oracle.hpp"

namespace cappedlp {

/// Levels of the alternating minimization of phi and ||B.||_0:
/// rho_0 < ... < rho_L are the attained data-fit values, s_0 > ... > s_L the
/// matching minimal counts ||B x||_0, omega[i] representatives of level i.
struct MarginalStructure {
  std::size_t L = 0;
  std::vector<double> rho;
  std::vector<std::size_t> s;
  std::vector<std::vector<OracleMinimizer>> omega;
};

/// Breakpoints of F(lambda) = min_i rho_i + lambda s_i.
/// t[0] = L > t[1] > ... > t[K] = 0 index the active lines and
/// lambda_breaks[0] > ... > lambda_breaks[K] = 0. tie_sets[j] holds the set
/// Lambda_{j-1}, so tie_sets[0] == {L}.
struct BreakpointStructure {
  std::size_t K = 0;
  std::vector<std::size_t> t;
  std::vector<double> lambda_breaks;
  std::vector<std::vector<std::size_t>> tie_sets;

  /// Lambda_i for i in [-1, K-1].
  const std::vector<std::size_t>& tie_set(std::ptrdiff_t i) const {
    return tie_sets.at(static_cast<std::size_t>(i + 1));
  }
};

struct MarginalOptions {
  OracleOptions oracle{};
  /// Two data-fit values within level_rel_tol * (1 + |rho|) are the same level.
  double level_rel_tol = 1e-8;
  /// Relative tolerance when collecting the argmax set of breakpoint ratios.
  double ratio_rel_tol = 1e-10;
  /// lambda within this relative distance of a breakpoint selects the union branch.
  double breakpoint_rel_tol = 1e-12;
};

MarginalStructure build_marginal(const ProblemInstance& inst, const MarginalOptions& opts = {});

BreakpointStructure build_breakpoints(const MarginalStructure& ms,
                                      const MarginalOptions& opts = {});

/// Optimal value of min phi(x) + lambda ||B x||_0.
double eval_F(const MarginalStructure& ms, double lambda);

/// Level indices whose representatives make up the optimal set at lambda.
std::vector<std::size_t> active_levels(const MarginalStructure& ms, const BreakpointStructure& bs,
                                       double lambda, const MarginalOptions& opts = {});

/// Representatives of the optimal solution set at lambda: a single level on
/// open intervals between breakpoints, a union of levels exactly at one.
std::vector<OracleMinimizer> eval_Omega(const MarginalStructure& ms,
                                        const BreakpointStructure& bs, double lambda,
                                        const MarginalOptions& opts = {});

}  // namespace cappedlp
