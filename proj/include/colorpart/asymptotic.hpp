#pragma once

// Log-space comparison of exact g(n) against the main term
// M(n) = c n^d exp(exp_coeff sqrt(n)), and a log-log fit of the decay of
// the relative error.

#include "colorpart/exact.hpp"
#include "colorpart/real.hpp"
#include "colorpart/spec.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace colorpart {

struct ComparisonRow {
    std::uint64_t n;
    Real ln_exact;
    Real ln_main;
    Real rel_err;  ///< g(n)/M(n) - 1
};

struct ExponentFit {
    double slope;
    double intercept;
    double r_squared;
    std::uint64_t n_min;
    std::uint64_t n_max;
    std::size_t points;
    std::vector<std::string> warnings;
};

/// ln c + d ln n + exp_coeff sqrt(n), evaluated at `prec`.
Real ln_main_term(const AsymptoticConstants& constants, std::uint64_t n, Precision prec = {});

/// ln x for x >= 1 from the leading bits of x and its bit length.
Real ln_of_bigint(const mpz_class& x, Precision prec = {});

/// Rows use `series` for g(n); throws PreconditionFailed if some n exceeds it.
std::vector<ComparisonRow> comparison_table(const ExactSeries& series, std::span<const std::uint64_t> ns,
                                            Precision prec = {});

/// Builds the exact series up to max(ns) with the divisor recurrence first.
std::vector<ComparisonRow> comparison_table(const ColoredSpec& spec, std::span<const std::uint64_t> ns,
                                            Precision prec = {});

/// Ordinary least squares of ln|rel_err| against ln n. Rows with rel_err = 0
/// are dropped with a warning; throws InsufficientData with fewer than four
/// usable rows or when n_max < 8 n_min.
ExponentFit fit_error_exponent(std::span<const ComparisonRow> rows);

/// base, 2 base, 4 base, ... up to and including hi.
std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi);

inline constexpr int kComparisonDigits = 25;

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows);
void write_comparison_json(std::ostream& out, std::span<const ComparisonRow> rows);

}  // namespace colorpart
