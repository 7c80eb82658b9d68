#pragma once

#include <cstddef>
#include <cstdint>

#include "cappedlp/core.hpp"

namespace cappedlp {

/// Least-squares instance with A (r x n), b, B (m x n) drawn iid uniform on
/// [-1, 1] from a mt19937_64 seeded with `seed`. Used by the CLI's --random
/// flag and by the test suites.
ProblemInstance random_least_squares_instance(std::size_t n, std::size_t m, std::size_t r,
                                              double lambda, std::uint64_t seed, double p = 2.0);

}  // namespace cappedlp
