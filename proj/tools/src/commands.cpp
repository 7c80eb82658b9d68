#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cappedlp/cli.hpp"
#include "cappedlp/errors.hpp"
#include "cappedlp/marginal.hpp"
#include "cappedlp/oracle.hpp"
#include "cappedlp/random.hpp"
#include "cappedlp/solver.hpp"
#include "cappedlp/thresholds.hpp"

namespace cappedlp::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string problem;
  std::string random;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  double gamma_start = 0.0;
  double gamma_factor = 0.0;
  double gamma_max = 0.0;
  double tol_zero = kDefaultTolZero;
  double alpha = 0.0;
  std::string format = "json";
  std::string mode;
  bool with_oracle = false;
};

/// Options a subcommand accepted, so handlers can tell "given" from "default".
struct Given {
  CLI::Option* lambda = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* gamma_start = nullptr;
  CLI::Option* gamma_factor = nullptr;
  CLI::Option* gamma_max = nullptr;
  CLI::Option* tol_zero = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* format = nullptr;

  static bool set(const CLI::Option* o) { return o != nullptr && o->count() > 0; }
};

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json minimizer_json(const OracleMinimizer& rep) {
  return {{"x", vector_json(rep.x)},
          {"zero_rows", mask_indices(rep.pattern.zero_rows)},
          {"fit_rows", mask_indices(rep.pattern.fit_rows)}};
}

json oracle_json(const OracleResult& res) {
  json mins = json::array();
  for (const auto& rep : res.minimizers) mins.push_back(minimizer_json(rep));
  json out = {{"feasible", res.feasible}, {"minimizers", std::move(mins)}};
  out["value"] = res.feasible ? json(res.value) : json(nullptr);
  return out;
}

ProblemFile load(const Flags& f, const Given& g) {
  const bool from_file = !f.problem.empty();
  const bool random = !f.random.empty();
  if (from_file == random) throw UsageError("give exactly one of a problem file or --random n,m,r");

  ProblemFile file = [&] {
    if (from_file) return parse_problem_file(f.problem);
    std::size_t dims[3];
    std::istringstream in(f.random);
    char comma1 = 0, comma2 = 0;
    if (!(in >> dims[0] >> comma1 >> dims[1] >> comma2 >> dims[2]) || comma1 != ',' ||
        comma2 != ',' || !in.eof() || dims[0] == 0 || dims[2] == 0)
      throw UsageError("--random expects n,m,r with n, r >= 1");
    const double lambda = Given::set(g.lambda) ? f.lambda : 0.1;
    return ProblemFile{random_least_squares_instance(dims[0], dims[1], dims[2], lambda, f.seed),
                       SolverConfig{}};
  }();

  if (Given::set(g.lambda)) {
    if (!(f.lambda > 0.0)) throw UsageError("--lambda must be > 0");
    file.instance = file.instance.with_lambda(f.lambda);
  }
  if (Given::set(g.tol_zero)) {
    if (!(f.tol_zero >= 0.0)) throw UsageError("--tol-zero must be >= 0");
    file.solver.tol_zero = f.tol_zero;
  }
  return file;
}

void require_json(const Flags& f, const char* command) {
  if (f.format != "json") throw UsageError(std::string(command) + " only supports --format json");
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

OracleOptions oracle_options(const ProblemFile& file) {
  OracleOptions o;
  o.tol_zero = file.solver.tol_zero;
  return o;
}

void run_oracle(const Flags& f, const Given& g, std::ostream& out) {
  require_json(f, "oracle");
  const ProblemFile file = load(f, g);
  json doc;
  if (Given::set(g.gamma)) {
    doc = oracle_json(oracle_min_Psi(file.instance, f.gamma, oracle_options(file)));
    doc["objective"] = "Psi";
    doc["gamma"] = f.gamma;
  } else {
    doc = oracle_json(oracle_min_Phi(file.instance, oracle_options(file)));
    doc["objective"] = "Phi";
  }
  emit(out, doc);
}

void run_solve(const Flags& f, const Given& g, std::ostream& out) {
  require_json(f, "solve");
  if (!Given::set(g.gamma)) throw UsageError("solve requires --gamma");
  const ProblemFile file = load(f, g);
  const SolveReport rep = bcd_solve(file.instance, f.gamma, file.solver);
  const double tol = file.solver.tol_zero;
  emit(out, {{"gamma", rep.gamma},
             {"x", vector_json(rep.x)},
             {"v", vector_json(rep.v)},
             {"split_value", rep.split_value},
             {"psi_value", rep.psi_value},
             {"phi_value", eval_Phi(file.instance, rep.x, tol)},
             {"nnz_Bx", count_nonzeros(file.instance.B() * rep.x, tol)},
             {"iterations", rep.iterations},
             {"converged", rep.converged},
             {"trace", rep.trace}});
}

void run_sweep(const Flags& f, const Given& g, std::ostream& out) {
  if (f.format != "csv" && f.format != "json") throw UsageError("--format must be json or csv");
  ProblemFile file = load(f, g);
  if (Given::set(g.gamma_start)) file.solver.gamma0 = f.gamma_start;
  if (Given::set(g.gamma_factor)) file.solver.gamma_factor = f.gamma_factor;
  if (Given::set(g.gamma_max)) file.solver.gamma_max = f.gamma_max;
  else if (Given::set(g.gamma_start))
    file.solver.gamma_max = std::max(file.solver.gamma_max, file.solver.gamma0);
  try {
    file.solver.validate();
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }

  const ProblemInstance& inst = file.instance;
  const double tol = file.solver.tol_zero;
  const ContinuationPath path = continuation_solve(inst, file.solver);

  json rows = json::array();
  if (f.format == "csv") out << kSweepHeader << (f.with_oracle ? ",oracle_value" : "") << '\n';
  for (const SolveReport& rep : path.reports) {
    const Vector refit = support_refit(inst, rep.v);
    const double phi = eval_Phi(inst, refit, tol);
    const std::size_t nnz = count_nonzeros(inst.B() * refit, tol);
    const double oracle =
        f.with_oracle ? oracle_min_Psi(inst, rep.gamma, oracle_options(file)).value : 0.0;
    if (f.format == "csv") {
      out << format_double(rep.gamma) << ',' << format_double(rep.split_value) << ','
          << format_double(rep.psi_value) << ',' << format_double(phi) << ',' << nnz;
      if (f.with_oracle) out << ',' << format_double(oracle);
      out << '\n';
    } else {
      json row = {{"gamma", rep.gamma},       {"split_value", rep.split_value},
                  {"psi_value", rep.psi_value}, {"phi_value", phi},
                  {"nnz_Bx", nnz}};
      if (f.with_oracle) row["oracle_value"] = oracle;
      rows.push_back(std::move(row));
    }
  }
  if (f.format == "json") emit(out, rows);
}

json marginal_json(const MarginalStructure& ms) {
  json omega = json::array();
  for (const auto& level : ms.omega) {
    json reps = json::array();
    for (const auto& rep : level) reps.push_back(minimizer_json(rep));
    omega.push_back(std::move(reps));
  }
  return {{"L", ms.L}, {"rho", ms.rho}, {"s", ms.s}, {"omega", std::move(omega)}};
}

MarginalOptions marginal_options(const ProblemFile& file) {
  MarginalOptions o;
  o.oracle = oracle_options(file);
  return o;
}

void run_marginal(const Flags& f, const Given& g, std::ostream& out) {
  require_json(f, "marginal");
  const ProblemFile file = load(f, g);
  emit(out, marginal_json(build_marginal(file.instance, marginal_options(file))));
}

void run_breakpoints(const Flags& f, const Given& g, std::ostream& out) {
  require_json(f, "breakpoints");
  const ProblemFile file = load(f, g);
  const MarginalOptions opts = marginal_options(file);
  const MarginalStructure ms = build_marginal(file.instance, opts);
  const BreakpointStructure bs = build_breakpoints(ms, opts);

  // F at every positive breakpoint, at the midpoints between consecutive
  // breakpoints and beyond the largest one.
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < bs.K; ++i) {
    lambdas.push_back(bs.lambda_breaks[i]);
    lambdas.push_back(0.5 * (bs.lambda_breaks[i] + bs.lambda_breaks[i + 1]));
  }
  lambdas.push_back(bs.K > 0 ? 2.0 * bs.lambda_breaks[0] : 1.0);
  std::sort(lambdas.begin(), lambdas.end());

  json samples = json::array();
  for (double lambda : lambdas)
    samples.push_back({{"lambda", lambda},
                       {"F", eval_F(ms, lambda)},
                       {"levels", active_levels(ms, bs, lambda, opts)}});
  emit(out, {{"K", bs.K},
             {"t", bs.t},
             {"lambda_breaks", bs.lambda_breaks},
             {"tie_sets", bs.tie_sets},
             {"rho", ms.rho},
             {"s", ms.s},
             {"samples", std::move(samples)}});
}

void run_threshold(const Flags& f, const Given& g, std::ostream& out) {
  require_json(f, "threshold");
  const ProblemFile file = load(f, g);
  const ProblemInstance& inst = file.instance;
  const double tol = file.solver.tol_zero;
  json doc = {{"mode", f.mode}};
  if (f.mode == "finite-c") {
    const auto* set = std::get_if<IndicatorFiniteSet>(&inst.datafit());
    if (set == nullptr) throw UnsupportedError("finite-c needs an indicator_finite_set problem");
    const ThresholdReport rep = gamma_star_finite_C(set->points, inst.B(), inst.p(), tol);
    doc["k_star"] = rep.k_star;
    doc["tau"] = rep.tau ? json(*rep.tau) : json(nullptr);
    doc["gamma_star"] = rep.gamma_star;
  } else if (f.mode == "l0l0") {
    const auto* fit = std::get_if<L0Affine>(&inst.datafit());
    if (fit == nullptr) throw UnsupportedError("l0l0 needs an l0_affine problem");
    const L0L0ThresholdReport rep =
        gamma_star_l0l0(fit->A, fit->b, inst.B(), inst.lambda(), inst.p(), oracle_options(file));
    doc["s"] = rep.s;
    doc["rho"] = rep.rho ? json(*rep.rho) : json(nullptr);
    doc["gamma_star"] = rep.gamma_star;
    doc["pieces"] = rep.pieces;
  } else if (f.mode == "bound") {
    const double gamma0 = Given::set(g.gamma) ? f.gamma : file.solver.gamma0;
    const double alpha =
        Given::set(g.alpha) ? f.alpha : oracle_min_Phi(inst, oracle_options(file)).value;
    const BoundCertificate cert = s1_s2_bound(inst, gamma0, alpha);
    doc["gamma0"] = gamma0;
    doc["alpha"] = alpha;
    doc["U"] = cert.U;
    doc["sigma_BXi"] = cert.sigma_BXi ? json(*cert.sigma_BXi) : json(nullptr);
    doc["radius"] = cert.radius;
    doc["kernel_dim"] = cert.kernel_dim;
  } else {
    throw UsageError("--mode must be finite-c, l0l0 or bound");
  }
  emit(out, doc);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact oracles, thresholds and a continuation solver for capped l_p penalties",
               "cappedlp"};
  app.require_subcommand(1);
  Flags f;

  struct Spec {
    const char* name;
    const char* help;
    void (*run)(const Flags&, const Given&, std::ostream&);
  };
  const Spec specs[] = {
      {"oracle", "global minimum of Phi (or of Psi with --gamma) by enumeration", run_oracle},
      {"solve", "block coordinate descent at a fixed --gamma", run_solve},
      {"sweep", "gamma continuation table", run_sweep},
      {"marginal", "levels (rho_i, s_i) of the marginal function", run_marginal},
      {"breakpoints", "breakpoints of F(lambda) with samples", run_breakpoints},
      {"threshold", "exactness thresholds and the kernel bound", run_threshold},
  };

  std::vector<std::pair<CLI::App*, Given>> subs;
  for (const Spec& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    Given opt;
    sub->add_option("problem", f.problem, "problem file (JSON)");
    sub->add_option("--random", f.random, "random least-squares instance n,m,r");
    sub->add_option("--seed", f.seed, "seed for --random");
    opt.lambda = sub->add_option("--lambda", f.lambda, "override lambda");
    opt.tol_zero = sub->add_option("--tol-zero", f.tol_zero, "zero-count tolerance");
    opt.format = sub->add_option("--format", f.format, "json or csv");
    const std::string name = spec.name;
    if (name == "oracle" || name == "solve" || name == "threshold")
      opt.gamma = sub->add_option("--gamma", f.gamma, name == "threshold" ? "gamma0 for --mode bound"
                                                                         : "approximation scale");
    if (name == "sweep") {
      opt.gamma_start = sub->add_option("--gamma-start", f.gamma_start, "first gamma");
      opt.gamma_factor = sub->add_option("--gamma-factor", f.gamma_factor, "growth factor");
      opt.gamma_max = sub->add_option("--gamma-max", f.gamma_max, "last gamma (inclusive)");
      sub->add_flag("--with-oracle", f.with_oracle, "append oracle_min_Psi values");
    }
    if (name == "threshold") {
      sub->add_option("--mode", f.mode, "finite-c, l0l0 or bound")->required();
      opt.alpha = sub->add_option("--alpha", f.alpha, "upper bound on min Phi (bound mode)");
    }
    subs.emplace_back(sub, opt);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i].first->parsed()) continue;
      // Tables default to CSV, everything else to JSON.
      if (std::string(specs[i].name) == "sweep" && !Given::set(subs[i].second.format))
        f.format = "csv";
      specs[i].run(f, subs[i].second, out);
      return kOk;
    }
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << '\n';
    return kLoad;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace cappedlp::cli
