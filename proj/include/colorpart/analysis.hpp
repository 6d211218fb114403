#pragma once

// Numerical checks of the machinery behind the leading-term asymptotic:
// the near-saddle / far-from-saddle split of the tuple sum, sum-to-integral
// comparison, and the Gaussian integral of the quadratic form
// a_0 (x_1 + ... + x_k)^2 + a_1 x_1^2 + ... + a_k x_k^2.

#include "colorpart/exact.hpp"
#include "colorpart/real.hpp"
#include "colorpart/spec.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace colorpart {

// ---------------------------------------------------------------------------
// Region split
// ---------------------------------------------------------------------------

/// Saddle point v_{i,j} = n / (s_i^2 a), one entry per color in (i, j) order.
std::vector<mpq_class> saddle_tuple(const ColoredSpec& spec, std::uint64_t n);

/// Default box-width exponent for experiments.
inline const mpq_class kDefaultEta{4, 5};

/// Default cap on enumerated tuples for region_split.
inline constexpr std::uint64_t kDefaultTupleBudget = 1'000'000'000;

struct RegionSplitReport {
    ColoredSpec spec;
    std::uint64_t n;
    mpq_class eta;
    std::vector<mpq_class> v;
    mpz_class main_sum;  ///< tuples with |u - v| < v^eta on every free coordinate
    mpz_class tail_sum;  ///< the rest
    Real tail_fraction;
};

/// Receives each enumerated tuple (in color order) and whether it fell in the main box.
using TupleObserver = std::function<void(std::span<const std::uint64_t> tuple, bool in_main)>;

/// Number of tuples region_split would visit.
double region_split_cost(const ColoredSpec& spec, std::uint64_t n);

/// Enumerates every tuple of U_n over the free coordinates (all colors but
/// the first, whose value is then forced) and classifies it by the box
/// condition. Requires k + l_1 >= 3 and eta inside the admissible window.
RegionSplitReport region_split(const ColoredSpec& spec, std::uint64_t n, const mpq_class& eta,
                               const PartitionTable& ptable, std::uint64_t budget = kDefaultTupleBudget,
                               Precision prec = {}, const TupleObserver& observer = {});

/// Exact test of |u - v| < v^eta, via |u - v|^q < v^p for eta = p/q.
bool in_saddle_box(std::uint64_t u, const mpq_class& v, const mpq_class& eta);

struct TailCertificate {
    Real gap;  ///< ln(tail_sum) - exp_coeff sqrt(n)
    Real c3;   ///< -gap / n^(2 eta - 3/2); +inf when the tail is empty
};

TailCertificate tail_bound_certificate(const RegionSplitReport& report, const AsymptoticConstants& constants);

/// JSON with exact integers and rationals as decimal strings.
void write_region_report_json(std::ostream& out, const RegionSplitReport& report);

// ---------------------------------------------------------------------------
// Sum versus integral
// ---------------------------------------------------------------------------

struct SumIntegralCheck {
    double sum;
    double integral;
    double max_abs;
    double bound;  ///< 2 (m + 1) max|f|
    bool holds;
};

inline constexpr double kQuadratureRelTol = 1e-10;
inline constexpr std::size_t kMaxGridPoints = 10'000;

/// Compares sum_{lo <= n <= hi} f(n) with the integral of f over [lo, hi];
/// `critical_points` is the caller's count of interior zeros of f'.
SumIntegralCheck sum_vs_integral(const std::function<double(double)>& f, double lo, double hi,
                                 unsigned critical_points);

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

struct QuadFormSpec {
    double a0;
    std::vector<double> a_rest;  ///< a_1 .. a_k

    [[nodiscard]] std::size_t k() const { return a_rest.size(); }
    /// Throws PreconditionFailed unless every entry is positive and k >= 1.
    void validate() const;
};

/// The k x k matrix with diagonal a_0 + a_i and off-diagonal a_0.
std::vector<std::vector<double>> quadform_matrix(const QuadFormSpec& q);

/// a_0 a_1 ... a_k (1/a_0 + 1/a_1 + ... + 1/a_k).
double det_closed_form(const QuadFormSpec& q);

/// pi^(k/2) / sqrt(det A_k), the integral of exp(-x^T A_k x) over R^k.
double gaussian_quadform_integral(const QuadFormSpec& q);

/// exp(-radius^2), bounding the tail of exp(-t^2) beyond radius >= 1.
double truncation_error_bound(double radius);

inline constexpr double kDefaultTruncationRadius = 8.0;

}  // namespace colorpart
