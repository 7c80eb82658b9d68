#include "cappedlp/marginal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cappedlp/errors.hpp"

namespace cappedlp {

namespace {

struct Level {
  double rho;
  std::size_t s;
  std::vector<OracleMinimizer> omega;
};

/// Keeps only the representatives with the fewest nonzeros of B x.
Level sparsest_level(const ProblemInstance& inst, OracleResult res, const OracleOptions& o) {
  Level level{res.value, inst.m(), {}};
  std::vector<std::size_t> counts;
  counts.reserve(res.minimizers.size());
  for (const auto& rep : res.minimizers) {
    counts.push_back(count_nonzeros(inst.B() * rep.x, o.tol_zero));
    level.s = std::min(level.s, counts.back());
  }
  for (std::size_t i = 0; i < res.minimizers.size(); ++i)
    if (counts[i] == level.s) level.omega.push_back(std::move(res.minimizers[i]));
  return level;
}

}  // namespace

MarginalStructure build_marginal(const ProblemInstance& inst, const MarginalOptions& opts) {
  OracleOptions o = opts.oracle;
  o.tie_rel_tol = opts.level_rel_tol;

  MarginalStructure ms;
  auto push = [&ms](Level level) {
    ms.rho.push_back(level.rho);
    ms.s.push_back(level.s);
    ms.omega.push_back(std::move(level.omega));
  };

  OracleResult first = oracle_constrained_Phi(inst, inst.m(), o);
  if (!first.feasible) throw InputError("build_marginal: data fit has an empty domain");
  push(sparsest_level(inst, std::move(first), o));

  while (ms.s.back() > 0) {
    OracleResult next = oracle_constrained_Phi(inst, ms.s.back() - 1, o);
    if (!next.feasible) break;
    push(sparsest_level(inst, std::move(next), o));
  }
  ms.L = ms.rho.size() - 1;
  return ms;
}

BreakpointStructure build_breakpoints(const MarginalStructure& ms, const MarginalOptions& opts) {
  if (ms.rho.size() != ms.L + 1 || ms.s.size() != ms.L + 1)
    throw InputError("build_breakpoints: malformed marginal structure");

  BreakpointStructure bs;
  bs.tie_sets.push_back({ms.L});
  auto contains_zero = [](const std::vector<std::size_t>& set) {
    return std::find(set.begin(), set.end(), std::size_t{0}) != set.end();
  };

  while (!contains_zero(bs.tie_sets.back())) {
    const std::size_t ti = *std::min_element(bs.tie_sets.back().begin(), bs.tie_sets.back().end());
    std::vector<double> ratios(ti);
    for (std::size_t j = 0; j < ti; ++j)
      ratios[j] = (ms.rho[ti] - ms.rho[j]) / static_cast<double>(ms.s[j] - ms.s[ti]);
    const double best = *std::max_element(ratios.begin(), ratios.end());
    std::vector<std::size_t> argmax;
    for (std::size_t j = 0; j < ti; ++j)
      if (ratios[j] >= best - opts.ratio_rel_tol * std::abs(best)) argmax.push_back(j);
    bs.t.push_back(ti);
    bs.lambda_breaks.push_back(best);
    bs.tie_sets.push_back(std::move(argmax));
  }
  bs.K = bs.t.size();
  bs.t.push_back(0);
  bs.lambda_breaks.push_back(0.0);
  return bs;
}

double eval_F(const MarginalStructure& ms, double lambda) {
  if (!(lambda > 0.0)) throw InputError("eval_F: lambda must be > 0");
  double best = kInfinity;
  for (std::size_t i = 0; i <= ms.L; ++i)
    best = std::min(best, ms.rho[i] + lambda * static_cast<double>(ms.s[i]));
  return best;
}

std::vector<std::size_t> active_levels(const MarginalStructure& ms, const BreakpointStructure& bs,
                                       double lambda, const MarginalOptions& opts) {
  if (!(lambda > 0.0)) throw InputError("active_levels: lambda must be > 0");
  if (ms.L == 0) return {0};

  for (std::size_t i = 0; i < bs.K; ++i) {
    const double brk = bs.lambda_breaks[i];
    if (std::abs(lambda - brk) <= opts.breakpoint_rel_tol * brk) {
      std::vector<std::size_t> levels = bs.tie_sets[i + 1];
      levels.push_back(bs.t[i]);
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      return levels;
    }
  }
  if (lambda > bs.lambda_breaks[0]) return {bs.t[0]};
  for (std::size_t i = 1; i <= bs.K; ++i)
    if (lambda > bs.lambda_breaks[i]) return {bs.t[i]};
  return {0};
}

std::vector<OracleMinimizer> eval_Omega(const MarginalStructure& ms, const BreakpointStructure& bs,
                                        double lambda, const MarginalOptions& opts) {
  std::vector<OracleMinimizer> out;
  for (std::size_t level : active_levels(ms, bs, lambda, opts))
    out.insert(out.end(), ms.omega[level].begin(), ms.omega[level].end());
  return out;
}

}  // namespace cappedlp
