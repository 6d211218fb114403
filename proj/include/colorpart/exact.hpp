#pragma once

// Exact coefficient tables for p(n) and g(s,l,n).
//
// Three independent routes produce g(s,l,n):
//   * DivisorRecurrence: n g(n) = sum_{j=1..n} b(j) g(n-j), the logarithmic
//     derivative of the generating product, with
//     b(j) = sum_{i : s_i | j} l_i s_i sigma_1(j / s_i).
//   * EulerProduct: multiply out the truncated factors 1/(1 - z^m) one by one.
//   * TupleConvolution: sum over L-tuples u with sum s_i u_{i,j} = n of
//     prod p(u_{i,j}), evaluated as a fold over colors.

#include "colorpart/spec.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace colorpart {

enum class SeriesMethod { DivisorRecurrence, EulerProduct, TupleConvolution };

std::string_view to_string(SeriesMethod method);

struct PartitionTable {
    std::vector<mpz_class> coeffs;  ///< p(0..N)

    [[nodiscard]] std::size_t max_n() const { return coeffs.size() - 1; }
    const mpz_class& operator[](std::size_t n) const { return coeffs[n]; }
};

struct ExactSeries {
    ColoredSpec spec;
    std::vector<mpz_class> coeffs;  ///< g(0..N)
    SeriesMethod method;

    [[nodiscard]] std::size_t max_n() const { return coeffs.size() - 1; }
    const mpz_class& operator[](std::size_t n) const { return coeffs[n]; }
};

/// p(0..max_n) by Euler's pentagonal-number recurrence.
PartitionTable partition_table(std::size_t max_n);

/// sigma_1(0..max_n) by a divisor-sum sieve; entry 0 is 0.
std::vector<std::uint64_t> divisor_sums(std::size_t max_n);

/// b(1..max_n) for the divisor recurrence; entry 0 is 0.
std::vector<std::uint64_t> log_derivative_weights(const ColoredSpec& spec, std::size_t max_n);

ExactSeries g_series_divisor(const ColoredSpec& spec, std::size_t max_n);

ExactSeries g_series_euler(const ColoredSpec& spec, std::size_t max_n);

/// Default cap on fold steps for g_via_tuple_convolution.
inline constexpr std::uint64_t kDefaultFoldBudget = 1'000'000'000;

/// Estimated number of multiply-adds g_via_tuple_convolution performs for n.
std::uint64_t tuple_convolution_cost(const ColoredSpec& spec, std::size_t n);

/// Single value g(n) from the tuple sum; throws TooLarge when the cost
/// estimate exceeds `budget`. `ptable` must cover 0..n.
mpz_class g_via_tuple_convolution(const ColoredSpec& spec, std::size_t n, const PartitionTable& ptable,
                                  std::uint64_t budget = kDefaultFoldBudget);

/// CSV with header `n,g`.
void write_series_csv(std::ostream& out, const std::vector<mpz_class>& coeffs);
/// One decimal integer per line, index implied by line number.
void write_series_raw(std::ostream& out, const std::vector<mpz_class>& coeffs);
/// Reads the raw format back.
std::vector<mpz_class> read_series_raw(std::istream& in);

}  // namespace colorpart
