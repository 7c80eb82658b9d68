#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cappedlp/core.hpp"
#include "cappedlp/solver.hpp"

namespace cappedlp::cli {

/// Process exit statuses of run_command.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kLoad = 3,
  kCapacity = 4,
  kUnsupported = 5,
};

/// A problem document could not be turned into an instance. what() starts
/// with the offending field path, e.g. "B[1]: ...".
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  ProblemInstance instance;
  SolverConfig solver;
};

ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_file(const std::string& path);
nlohmann::json serialize_problem(const ProblemFile& file);

/// Fixed column order of the sweep table.
inline constexpr const char* kSweepHeader = "gamma,split_value,psi_value,phi_value,nnz_Bx";

/// 17 significant digits; parses back to exactly `x` for finite doubles.
std::string format_double(double x);

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cappedlp::cli
