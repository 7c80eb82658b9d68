#include <cstdio>
#include <fstream>
#include <sstream>

#include "cappedlp/cli.hpp"
#include "cappedlp/errors.hpp"

namespace cappedlp::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw LoadError(path + ": " + what);
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing");
  return doc.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Vector vector_field(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

/// Row-major array of rows. An empty array is a 0 x 0 matrix.
Matrix matrix_field(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (j.empty()) return Matrix(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Vector row = vector_field(j[i], row_path);
    if (static_cast<std::size_t>(row.size()) != cols)
      fail(row_path, "has " + std::to_string(row.size()) + " entries, expected " +
                         std::to_string(cols));
    M.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return M;
}

std::pair<Matrix, Vector> affine_pair(const json& doc) {
  Matrix A = matrix_field(require(doc, "A"), "A");
  Vector b = vector_field(require(doc, "b"), "b");
  if (A.rows() != b.size())
    fail("b", "has " + std::to_string(b.size()) + " entries but A has " +
                  std::to_string(A.rows()) + " rows");
  return {std::move(A), std::move(b)};
}

double positive(const json& doc, const char* key) {
  const double x = number(require(doc, key), key);
  if (!(x > 0.0)) fail(key, "must be > 0");
  return x;
}

SolverConfig parse_solver(const json& doc) {
  SolverConfig cfg;
  if (!doc.contains("solver")) return cfg;
  const json& s = doc.at("solver");
  if (!s.is_object()) fail("solver", "expected an object");
  for (const auto& [key, value] : s.items()) {
    const std::string path = "solver." + key;
    if (key == "max_iters") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() < 1)
        fail(path, "expected a positive integer");
      cfg.max_iters = value.get<std::size_t>();
    } else if (key == "rel_tol") {
      cfg.rel_tol = number(value, path);
    } else if (key == "gamma0") {
      cfg.gamma0 = number(value, path);
    } else if (key == "gamma_factor") {
      cfg.gamma_factor = number(value, path);
    } else if (key == "gamma_max") {
      cfg.gamma_max = number(value, path);
    } else if (key == "tol_zero") {
      cfg.tol_zero = number(value, path);
    } else {
      fail(path, "unknown field");
    }
  }
  try {
    cfg.validate();
  } catch (const InputError& e) {
    fail("solver", e.what());
  }
  return cfg;
}

json matrix_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

}  // namespace

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) fail("$", "expected a JSON object");
  const json& tag = require(doc, "datafit");
  if (!tag.is_string()) fail("datafit", "expected a string");
  const std::string kind = tag.get<std::string>();

  DataFit fit;
  std::size_t n = 0;
  if (kind == "least_squares" || kind == "l0_affine") {
    auto [A, b] = affine_pair(doc);
    n = static_cast<std::size_t>(A.cols());
    if (kind == "least_squares")
      fit = LeastSquares{std::move(A), std::move(b)};
    else
      fit = L0Affine{std::move(A), std::move(b)};
  } else if (kind == "indicator_finite_set") {
    const json& pts = require(doc, "points");
    if (!pts.is_array() || pts.empty()) fail("points", "expected a nonempty array of points");
    IndicatorFiniteSet set;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string path = "points[" + std::to_string(i) + "]";
      set.points.push_back(vector_field(pts[i], path));
      if (set.points.back().size() != set.points.front().size())
        fail(path, "length differs from points[0]");
    }
    n = static_cast<std::size_t>(set.points.front().size());
    fit = std::move(set);
  } else {
    fail("datafit", "unknown kind '" + kind + "'");
  }

  Matrix B = matrix_field(require(doc, "B"), "B");
  if (B.rows() == 0) B.resize(0, static_cast<Eigen::Index>(n));
  if (static_cast<std::size_t>(B.cols()) != n)
    fail("B", "has " + std::to_string(B.cols()) + " columns, expected " + std::to_string(n));
  const double lambda = positive(doc, "lambda");
  const double p = positive(doc, "p");
  SolverConfig solver = parse_solver(doc);
  try {
    return {ProblemInstance(std::move(fit), std::move(B), lambda, p), solver};
  } catch (const InputError& e) {
    fail("$", e.what());
  }
}

ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(path + ": " + e.what());
  }
  return parse_problem(doc);
}

json serialize_problem(const ProblemFile& file) {
  const ProblemInstance& inst = file.instance;
  json doc;
  std::visit(
      [&](const auto& fit) {
        using T = std::decay_t<decltype(fit)>;
        if constexpr (std::is_same_v<T, IndicatorFiniteSet>) {
          doc["datafit"] = "indicator_finite_set";
          json pts = json::array();
          for (const auto& pt : fit.points) pts.push_back(vector_json(pt));
          doc["points"] = std::move(pts);
        } else {
          doc["datafit"] = std::is_same_v<T, LeastSquares> ? "least_squares" : "l0_affine";
          doc["A"] = matrix_json(fit.A);
          doc["b"] = vector_json(fit.b);
        }
      },
      inst.datafit());
  doc["B"] = matrix_json(inst.B());
  doc["lambda"] = inst.lambda();
  doc["p"] = inst.p();
  const SolverConfig& s = file.solver;
  doc["solver"] = {{"max_iters", s.max_iters}, {"rel_tol", s.rel_tol},
                   {"gamma0", s.gamma0},       {"gamma_factor", s.gamma_factor},
                   {"gamma_max", s.gamma_max}, {"tol_zero", s.tol_zero}};
  return doc;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace cappedlp::cli
