#pragma once

// Independent reference computations used to check the main library. None of
// these share code paths with the routines they verify.

#include "colorpart/analysis.hpp"
#include "colorpart/spec.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

namespace colorpart::oracle {

/// Counts (s,l)-colored partitions of n by listing them one at a time. Exponential; small n only.
mpz_class brute_force_colored_count(const ColoredSpec& spec, std::uint64_t n);

/// p(0..max_n) from the parts-bounded table q(t, m) = q(t, m - 1) + q(t - m, m).
std::vector<mpz_class> partitions_parts_bounded(std::size_t max_n);

/// Determinant by Gaussian elimination with partial pivoting.
double elimination_determinant(std::vector<std::vector<double>> matrix);

/// Adaptive quadrature of exp(-x^T A x) over the box [-radius, radius]^k, k in {1, 2}.
double box_quadrature_gaussian(const QuadFormSpec& q, double radius, double tolerance = 1e-10);

struct MonteCarloEstimate {
    double mean;
    double standard_error;
};

/// Importance-sampled estimate of the full-space Gaussian integral with an
/// isotropic normal proposal; seeded and reproducible.
MonteCarloEstimate monte_carlo_gaussian(const QuadFormSpec& q, std::uint64_t samples, std::uint64_t seed);

/// Random valid spec with k <= max_k, l_i <= max_l and s_i <= max_s (max_s >= max_k).
ColoredSpec random_spec(std::mt19937_64& rng, unsigned max_k, unsigned max_l, unsigned max_s);

/// |u - v| < v^eta evaluated in 512-bit floating point.
bool float_in_box(std::uint64_t u, const mpq_class& v, const mpq_class& eta);

}  // namespace colorpart::oracle
