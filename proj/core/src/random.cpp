#include "cappedlp/random.hpp"

#include <random>

namespace cappedlp {

ProblemInstance random_least_squares_instance(std::size_t n, std::size_t m, std::size_t r,
                                              double lambda, std::uint64_t seed, double p) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto fill = [&](Eigen::Index rows, Eigen::Index cols) {
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = unif(rng);
    return out;
  };
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix A = fill(static_cast<Eigen::Index>(r), ni);
  Vector b = fill(static_cast<Eigen::Index>(r), 1);
  Matrix B = fill(static_cast<Eigen::Index>(m), ni);
  return ProblemInstance(LeastSquares{std::move(A), std::move(b)}, std::move(B), lambda, p);
}

}  // namespace cappedlp
