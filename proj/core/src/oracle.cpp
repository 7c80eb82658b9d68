#include "cappedlp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "cappedlp/errors.hpp"
#include "cappedlp/scalar.hpp"

namespace cappedlp {

namespace {

RowMask full_mask(std::size_t rows) {
  return rows >= 64 ? ~RowMask{0} : (RowMask{1} << rows) - 1;
}

RowMask zero_mask_of(const VectorRef& y, double tol_zero) {
  RowMask mask = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) <= tol_zero) mask |= RowMask{1} << i;
  return mask;
}

void require_cap(std::size_t rows, std::size_t cap, const char* what) {
  if (rows > cap)
    throw CapacityError(std::string(what) + ": " + std::to_string(rows) +
                        " enumerated rows exceeds the cap of " + std::to_string(cap));
}

/// Tracks the running minimum over all enumerated candidates and keeps the
/// self-consistent ones (realized pattern == enumerated pattern) for reporting.
class Collector {
 public:
  explicit Collector(double tie_rel_tol) : tie_rel_tol_(tie_rel_tol) {}

  void offer(double score, Vector x, SupportPattern pattern, bool consistent) {
    if (!std::isfinite(score)) return;
    best_ = std::min(best_, score);
    auto& bucket = consistent ? consistent_ : fallback_;
    bucket.push_back({score, {std::move(x), pattern}});
  }

  OracleResult finish() && {
    OracleResult out;
    if (!std::isfinite(best_)) {
      out.feasible = false;
      return out;
    }
    out.value = best_;
    const double cutoff = best_ + tie_rel_tol_ * (1.0 + std::abs(best_));
    auto take = [&](std::vector<Entry>& bucket) {
      for (auto& e : bucket)
        if (e.score <= cutoff) out.minimizers.push_back(std::move(e.minimizer));
    };
    take(consistent_);
    if (out.minimizers.empty()) take(fallback_);
    std::stable_sort(out.minimizers.begin(), out.minimizers.end(),
                     [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
    return out;
  }

 private:
  struct Entry {
    double score;
    OracleMinimizer minimizer;
  };
  double tie_rel_tol_;
  double best_ = kInfinity;
  std::vector<Entry> consistent_;
  std::vector<Entry> fallback_;
};

Matrix stack(const Matrix& top, const Matrix& bottom, Eigen::Index cols) {
  Matrix out(top.rows() + bottom.rows(), cols);
  if (top.rows() > 0) out.topRows(top.rows()) = top;
  if (bottom.rows() > 0) out.bottomRows(bottom.rows()) = bottom;
  return out;
}

Vector stack(const Vector& top, const Vector& bottom) {
  Vector out(top.size() + bottom.size());
  out << top, bottom;
  return out;
}

Vector select_entries(const VectorRef& v, RowMask mask) {
  Vector out(std::popcount(mask));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (mask >> i & 1u) out[k++] = v[i];
  return out;
}

// --- least squares fit ------------------------------------------------------

/// Unconstrained: scores phi + lambda ||B x||_0. Constrained: scores phi over
/// ||B x||_0 <= max_nonzeros.
OracleResult ls_min_Phi(const ProblemInstance& inst, const LeastSquares& fit,
                        const OracleOptions& opts, std::size_t max_nonzeros, bool constrained) {
  const std::size_t m = inst.m();
  require_cap(m, kOracleRowCap, "oracle");
  const std::size_t min_zeros = m - std::min(max_nonzeros, m);
  Collector collector(opts.tie_rel_tol);
  for (RowMask mask = 0; mask <= full_mask(m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < min_zeros) continue;
    const auto sol =
        constrained_least_squares(fit.A, fit.b, select_rows(inst.B(), mask), opts.rank_tol);
    const RowMask realized = zero_mask_of(inst.B() * sol.x, opts.tol_zero);
    const auto nnz = m - static_cast<std::size_t>(std::popcount(realized));
    const double score =
        constrained ? sol.residual : sol.residual + inst.lambda() * static_cast<double>(nnz);
    collector.offer(score, sol.x, {realized, 0}, realized == mask);
  }
  return std::move(collector).finish();
}

OracleResult ls_min_Psi(const ProblemInstance& inst, const LeastSquares& fit, double gamma,
                        const OracleOptions& opts) {
  const std::size_t m = inst.m();
  require_cap(m, kOracleRowCap, "oracle");
  const CappedParams params(2.0, gamma);
  const double weight = std::sqrt(inst.lambda() * gamma);
  Collector collector(opts.tie_rel_tol);
  const RowMask all = full_mask(m);
  for (RowMask support = 0; support <= all; ++support) {
    // v_S = (B x)_S is free; the remaining rows are pulled to zero.
    const Matrix penalized = weight * select_rows(inst.B(), all & ~support);
    const Matrix C = stack(fit.A, penalized, fit.A.cols());
    const Vector d = stack(fit.b, Vector::Zero(penalized.rows()));
    const auto sol = least_squares(C, d, opts.rank_tol);
    const Vector v = split_argmin(inst.B() * sol.x, params);
    const RowMask v_zero = zero_mask_of(v, 0.0);
    const double score = eval_Psi(inst, sol.x, gamma, opts.tol_zero);
    collector.offer(score, sol.x, {v_zero, 0}, v_zero == (all & ~support));
  }
  return std::move(collector).finish();
}

// --- finite indicator set ---------------------------------------------------

template <typename Score>
OracleResult scan_points(const ProblemInstance& inst, const IndicatorFiniteSet& fit,
                         const OracleOptions& opts, Score&& score_of) {
  Collector collector(opts.tie_rel_tol);
  for (const auto& pt : fit.points) {
    const auto scored = score_of(pt);
    if (scored.has_value()) collector.offer(scored->first, pt, scored->second, true);
  }
  (void)inst;
  return std::move(collector).finish();
}

// --- l0 affine fit ----------------------------------------------------------

/// Enumerates (rows of A x = b enforced, rows of B x = 0 enforced). Each
/// feasible pair yields the min-norm point of the corresponding affine set.
template <typename Visit>
void enumerate_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                    const OracleOptions& opts, RowMask min_zero_count, Visit&& visit) {
  const auto t = static_cast<std::size_t>(A.rows());
  const auto m = static_cast<std::size_t>(B.rows());
  require_cap(t + m, kL0L0RowCap, "l0-l0 oracle");
  const Eigen::Index n = A.cols();
  const Matrix empty(0, n);
  const Vector none(0);
  for (RowMask fit_mask = 0; fit_mask <= full_mask(t); ++fit_mask) {
    const Matrix A_fit = select_rows(A, fit_mask);
    const Vector b_fit = select_entries(b, fit_mask);
    for (RowMask zero_mask = 0; zero_mask <= full_mask(m); ++zero_mask) {
      if (static_cast<RowMask>(std::popcount(zero_mask)) < min_zero_count) continue;
      const Matrix B_zero = select_rows(B, zero_mask);
      const Matrix E = stack(A_fit, B_zero, n);
      const Vector f = stack(b_fit, Vector::Zero(B_zero.rows()));
      const auto sol = affine_constrained_least_squares(empty, none, E, f, opts.feas_tol,
                                                        opts.rank_tol);
      if (!sol.feasible) continue;
      visit(fit_mask, zero_mask, sol.x);
    }
  }
}

OracleResult l0l0_min(const MatrixRef& A, const VectorRef& b, const MatrixRef& B, double lambda,
                      const OracleOptions& opts, std::size_t max_nonzeros, bool constrained) {
  const auto t = static_cast<std::size_t>(A.rows());
  const auto m = static_cast<std::size_t>(B.rows());
  const RowMask min_zeros = m - std::min(max_nonzeros, m);
  Collector collector(opts.tie_rel_tol);
  enumerate_l0l0(A, b, B, opts, min_zeros, [&](RowMask fit_mask, RowMask zero_mask, const Vector& x) {
    const RowMask fit_real = zero_mask_of(A * x - b, opts.tol_zero);
    const RowMask zero_real = zero_mask_of(B * x, opts.tol_zero);
    const double misfit = static_cast<double>(t - std::popcount(fit_real));
    const double nnz = static_cast<double>(m - std::popcount(zero_real));
    const double score = constrained ? misfit : misfit + lambda * nnz;
    collector.offer(score, x, {zero_real, fit_real}, fit_real == fit_mask && zero_real == zero_mask);
  });
  return std::move(collector).finish();
}

}  // namespace

std::vector<std::size_t> mask_indices(RowMask mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

OracleResult oracle_min_Phi(const ProblemInstance& inst, const OracleOptions& opts) {
  const std::size_t m = inst.m();
  if (const auto* ls = std::get_if<LeastSquares>(&inst.datafit()))
    return ls_min_Phi(inst, *ls, opts, m, false);
  if (const auto* l0 = std::get_if<L0Affine>(&inst.datafit()))
    return oracle_min_l0l0(l0->A, l0->b, inst.B(), inst.lambda(), opts);
  const auto& set = std::get<IndicatorFiniteSet>(inst.datafit());
  require_cap(m, 64, "indicator oracle");
  return scan_points(inst, set, opts, [&](const Vector& pt) {
    const Vector Bx = inst.B() * pt;
    const RowMask zeros = zero_mask_of(Bx, opts.tol_zero);
    const double nnz = static_cast<double>(count_nonzeros(Bx, opts.tol_zero));
    return std::optional(std::pair{inst.lambda() * nnz, SupportPattern{zeros, 0}});
  });
}

OracleResult oracle_min_Psi(const ProblemInstance& inst, double gamma, const OracleOptions& opts) {
  const CappedParams params(inst.p(), gamma);
  if (const auto* set = std::get_if<IndicatorFiniteSet>(&inst.datafit())) {
    require_cap(inst.m(), 64, "indicator oracle");
    return scan_points(inst, *set, opts, [&](const Vector& pt) {
      const Vector Bx = inst.B() * pt;
      const RowMask zeros = zero_mask_of(split_argmin(Bx, params), 0.0);
      return std::optional(std::pair{inst.lambda() * psi(Bx, params), SupportPattern{zeros, 0}});
    });
  }
  if (inst.p() != 2.0)
    throw UnsupportedError("oracle_min_Psi: exact inner solves need p = 2 for this data fit");
  if (const auto* ls = std::get_if<LeastSquares>(&inst.datafit()))
    return ls_min_Psi(inst, *ls, gamma, opts);
  const auto& l0 = std::get<L0Affine>(inst.datafit());
  return oracle_min_l0l0_split(l0.A, l0.b, inst.B(), inst.lambda(), gamma, opts);
}

OracleResult oracle_constrained_Phi(const ProblemInstance& inst, std::size_t k,
                                    const OracleOptions& opts) {
  const std::size_t m = inst.m();
  if (k > m) throw InputError("oracle_constrained_Phi: k exceeds the number of rows of B");
  if (const auto* ls = std::get_if<LeastSquares>(&inst.datafit()))
    return ls_min_Phi(inst, *ls, opts, k, true);
  if (const auto* l0 = std::get_if<L0Affine>(&inst.datafit()))
    return l0l0_min(l0->A, l0->b, inst.B(), inst.lambda(), opts, k, true);
  const auto& set = std::get<IndicatorFiniteSet>(inst.datafit());
  require_cap(m, 64, "indicator oracle");
  return scan_points(inst, set, opts, [&](const Vector& pt) {
    const Vector Bx = inst.B() * pt;
    using Scored = std::optional<std::pair<double, SupportPattern>>;
    if (count_nonzeros(Bx, opts.tol_zero) > k) return Scored{};
    return Scored(std::pair{0.0, SupportPattern{zero_mask_of(Bx, opts.tol_zero), 0}});
  });
}

OracleResult oracle_min_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                             double lambda, double tol_zero) {
  OracleOptions opts;
  opts.tol_zero = tol_zero;
  return oracle_min_l0l0(A, b, B, lambda, opts);
}

OracleResult oracle_min_l0l0(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                             double lambda, const OracleOptions& opts) {
  if (A.rows() != b.size() || A.cols() != B.cols())
    throw InputError("oracle_min_l0l0: inconsistent dimensions");
  if (!(lambda > 0.0)) throw InputError("oracle_min_l0l0: lambda must be > 0");
  return l0l0_min(A, b, B, lambda, opts, static_cast<std::size_t>(B.rows()), false);
}

OracleResult oracle_min_l0l0_split(const MatrixRef& A, const VectorRef& b, const MatrixRef& B,
                                   double lambda, double gamma, const OracleOptions& opts) {
  if (A.rows() != b.size() || A.cols() != B.cols())
    throw InputError("oracle_min_l0l0_split: inconsistent dimensions");
  if (!(lambda > 0.0)) throw InputError("oracle_min_l0l0_split: lambda must be > 0");
  const CappedParams params(2.0, gamma);
  const auto t = static_cast<std::size_t>(A.rows());
  const auto m = static_cast<std::size_t>(B.rows());
  require_cap(t + m, kL0L0RowCap, "l0-l0 oracle");
  const RowMask all = full_mask(m);
  Collector collector(opts.tie_rel_tol);
  for (RowMask fit_mask = 0; fit_mask <= full_mask(t); ++fit_mask) {
    const Matrix A_fit = select_rows(A, fit_mask);
    const Vector b_fit = select_entries(b, fit_mask);
    for (RowMask support = 0; support <= all; ++support) {
      const RowMask v_zero = all & ~support;
      const Matrix B_pen = select_rows(B, v_zero);
      const auto sol = affine_constrained_least_squares(B_pen, Vector::Zero(B_pen.rows()), A_fit,
                                                        b_fit, opts.feas_tol, opts.rank_tol);
      if (!sol.feasible) continue;
      const Vector Bx = B * sol.x;
      const RowMask fit_real = zero_mask_of(A * sol.x - b, opts.tol_zero);
      const RowMask v_real = zero_mask_of(split_argmin(Bx, params), 0.0);
      const double score = static_cast<double>(t - std::popcount(fit_real)) +
                           lambda * psi(Bx, params);
      collector.offer(score, sol.x, {v_real, fit_real}, fit_real == fit_mask && v_real == v_zero);
    }
  }
  return std::move(collector).finish();
}

}  // namespace cappedlp
