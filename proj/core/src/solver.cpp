#include "cappedlp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "cappedlp/errors.hpp"
#include "cappedlp/linalg.hpp"
#include "cappedlp/scalar.hpp"

namespace cappedlp {

namespace {

const LeastSquares& require_ls_p2(const ProblemInstance& inst) {
  const auto* fit = std::get_if<LeastSquares>(&inst.datafit());
  if (fit == nullptr) throw UnsupportedError("solver: only least-squares fits are supported");
  if (inst.p() != 2.0) throw UnsupportedError("solver: only p = 2 is supported");
  return *fit;
}

std::vector<bool> support_of(const Vector& v) {
  std::vector<bool> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v[i] != 0.0;
  return out;
}

Vector mask_vector(const std::vector<bool>& support) {
  Vector out(static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i) out[static_cast<Eigen::Index>(i)] = support[i];
  return out;
}

/// min-norm argmin of ||A x - b||^2 + w^2 ||B_{S^c} x||^2.
Vector support_solve(const Matrix& A, const Vector& b, const Matrix& B, double weight,
                     const std::vector<bool>& support) {
  std::vector<Eigen::Index> off;
  for (std::size_t i = 0; i < support.size(); ++i)
    if (!support[i]) off.push_back(static_cast<Eigen::Index>(i));
  Matrix stacked(A.rows() + static_cast<Eigen::Index>(off.size()), A.cols());
  stacked << A, weight * B(off, Eigen::all);
  Vector rhs = Vector::Zero(stacked.rows());
  rhs.head(A.rows()) = b;
  return least_squares(stacked, rhs).x;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 1) throw InputError("solver: max_iters must be >= 1");
  if (!(rel_tol > 0.0)) throw InputError("solver: rel_tol must be > 0");
  if (!(gamma0 > 0.0)) throw InputError("solver: gamma0 must be > 0");
  if (!(gamma_max >= gamma0)) throw InputError("solver: gamma_max must be >= gamma0");
  if (!(gamma_factor > 1.0)) throw InputError("solver: gamma_factor must be > 1");
  if (!(tol_zero >= 0.0)) throw InputError("solver: tol_zero must be >= 0");
}

SolveReport bcd_solve(const ProblemInstance& inst, double gamma, const SolverConfig& cfg,
                      const std::optional<Vector>& x0, const BcdObserver& observer) {
  const LeastSquares& fit = require_ls_p2(inst);
  cfg.validate();
  const CappedParams params(2.0, gamma);
  const Matrix& A = fit.A;
  const Matrix& B = inst.B();
  const Eigen::Index r = A.rows();
  const Eigen::Index m = B.rows();
  const double weight = std::sqrt(inst.lambda() * gamma);

  // x-update: min ||A x - b||^2 + lambda gamma ||B x - v||^2, i.e. the
  // min-norm least-squares solution of [A; w B] x = [b; w v].
  Matrix stacked(r + m, A.cols());
  stacked << A, weight * B;
  const MinNormLeastSquares x_solver(stacked);
  Vector rhs(r + m);
  rhs.head(r) = fit.b;

  SplitPoint pt;
  if (x0.has_value()) {
    if (static_cast<std::size_t>(x0->size()) != inst.n())
      throw InputError("bcd_solve: x0 has the wrong length");
    pt.x = *x0;
  } else {
    pt.x = least_squares(A, fit.b).x;
  }
  pt.v = split_argmin(B * pt.x, params);

  auto objective = [&] { return eval_split_objective(inst, pt, gamma, cfg.tol_zero); };
  SolveReport report;
  report.gamma = gamma;
  double current = objective();
  report.trace.push_back(current);
  if (observer) observer(BcdStep::kInitial, pt, current);

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    rhs.tail(m) = weight * pt.v;
    pt.x = x_solver.solve(rhs);
    if (observer) observer(BcdStep::kXUpdate, pt, objective());

    Vector v_next = split_argmin(B * pt.x, params);
    const bool same_support = support_of(v_next) == support_of(pt.v);
    pt.v = std::move(v_next);
    double next = objective();
    if (observer) observer(BcdStep::kVUpdate, pt, next);
    report.iterations = it + 1;
    const bool stalled = std::abs(current - next) <= cfg.rel_tol * std::max(1.0, std::abs(current));

    bool settled = stalled;
    if (same_support || stalled) {
      const auto support = support_of(pt.v);
      SplitPoint polished{support_solve(A, fit.b, B, weight, support), Vector()};
      polished.v = (B * polished.x).cwiseProduct(mask_vector(support));
      const double at_polish = eval_split_objective(inst, polished, gamma, cfg.tol_zero);
      if (at_polish <= next) {
        if (observer) observer(BcdStep::kPolish, polished, at_polish);
        polished.v = split_argmin(B * polished.x, params);
        pt = std::move(polished);
        next = objective();
        if (observer) observer(BcdStep::kVUpdate, pt, next);
        settled = settled || support_of(pt.v) == support;
      } else {
        settled = true;
      }
    }

    report.trace.push_back(next);
    current = next;
    if (settled) {
      report.converged = true;
      break;
    }
  }

  report.split_value = current;
  report.psi_value = eval_Psi(inst, pt.x, gamma, cfg.tol_zero);
  report.x = std::move(pt.x);
  report.v = std::move(pt.v);
  return report;
}

Vector support_refit(const ProblemInstance& inst, const VectorRef& v) {
  const LeastSquares& fit = require_ls_p2(inst);
  if (static_cast<std::size_t>(v.size()) != inst.m())
    throw InputError("support_refit: v has the wrong length");
  std::vector<Eigen::Index> off_support;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] == 0.0) off_support.push_back(i);
  const Matrix Ceq = inst.B()(off_support, Eigen::all);
  return constrained_least_squares(fit.A, fit.b, Ceq).x;
}

std::vector<double> gamma_schedule(const SolverConfig& cfg) {
  cfg.validate();
  std::vector<double> gammas;
  const double limit = cfg.gamma_max * (1.0 + 1e-12);
  for (double g = cfg.gamma0; g <= limit; g *= cfg.gamma_factor) gammas.push_back(g);
  return gammas;
}

ContinuationPath continuation_solve(const ProblemInstance& inst, const SolverConfig& cfg,
                                    const std::optional<Vector>& x0) {
  require_ls_p2(inst);
  ContinuationPath path;
  std::optional<Vector> start = x0;
  for (double gamma : gamma_schedule(cfg)) {
    path.reports.push_back(bcd_solve(inst, gamma, cfg, start));
    start = path.reports.back().x;
  }

  path.candidate = support_refit(inst, path.reports.back().v);
  path.candidate_phi = eval_Phi(inst, path.candidate, cfg.tol_zero);
  return path;
}

}  // namespace cappedlp
