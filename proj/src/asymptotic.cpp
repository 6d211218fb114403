#include "colorpart/asymptotic.hpp"

#include "colorpart/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace colorpart {

Real ln_main_term(const AsymptoticConstants& constants, std::uint64_t n, Precision prec) {
    const Precision work = prec.widened(32);
    const Real n_real(mpz_class(static_cast<unsigned long>(n)), work);
    Real value = log(constants.c.rounded(work)) + Real(constants.d, work) * log(n_real) +
                 constants.exp_coeff.rounded(work) * sqrt(n_real);
    return value.rounded(prec);
}

Real ln_of_bigint(const mpz_class& x, Precision prec) {
    if (sgn(x) <= 0) throw Error(ErrorCode::NonPositive, "logarithm of " + x.get_str());
    const Precision work = prec.widened(32);
    const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
    const std::size_t keep = work.bits + 32;
    if (bits <= keep) return log(Real(x, work)).rounded(prec);

    const std::size_t shift = bits - keep;
    mpz_class mantissa;
    mpz_tdiv_q_2exp(mantissa.get_mpz_t(), x.get_mpz_t(), shift);
    Real value = log(Real(mantissa, work)) + Real(mpz_class(static_cast<unsigned long>(shift)), work) * Real::ln2(work);
    return value.rounded(prec);
}

std::vector<ComparisonRow> comparison_table(const ExactSeries& series, std::span<const std::uint64_t> ns,
                                            Precision prec) {
    const auto consts = constants(series.spec, prec.widened(32));
    std::vector<ComparisonRow> rows;
    rows.reserve(ns.size());
    for (const auto n : ns) {
        if (n == 0) throw Error(ErrorCode::PreconditionFailed, "main term is undefined at n = 0");
        if (n > series.max_n()) {
            throw Error(ErrorCode::PreconditionFailed,
                        "series covers 0.." + std::to_string(series.max_n()) + ", need " + std::to_string(n));
        }
        const Precision work = prec.widened(32);
        Real ln_exact = ln_of_bigint(series[n], work);
        Real ln_main = ln_main_term(consts, n, work);
        Real rel_err = expm1(ln_exact - ln_main);
        rows.push_back(ComparisonRow{n, ln_exact.rounded(prec), ln_main.rounded(prec), rel_err.rounded(prec)});
    }
    return rows;
}

std::vector<ComparisonRow> comparison_table(const ColoredSpec& spec, std::span<const std::uint64_t> ns,
                                            Precision prec) {
    std::uint64_t max_n = 0;
    for (const auto n : ns) max_n = std::max(max_n, n);
    const auto series = g_series_divisor(spec, max_n);
    return comparison_table(series, ns, prec);
}

ExponentFit fit_error_exponent(std::span<const ComparisonRow> rows) {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::string> warnings;
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
    for (const auto& row : rows) {
        if (row.rel_err.is_zero()) {
            warnings.push_back("ZeroError: rel_err is exactly 0 at n = " + std::to_string(row.n) + "; row excluded");
            continue;
        }
        // ln|rel_err| in extended precision first, so tiny errors do not underflow.
        xs.push_back(std::log(static_cast<double>(row.n)));
        ys.push_back(log(abs(row.rel_err)).to_double());
        n_min = xs.size() == 1 ? row.n : std::min(n_min, row.n);
        n_max = std::max(n_max, row.n);
    }
    if (xs.size() < 4) {
        throw Error(ErrorCode::InsufficientData, "need at least 4 usable rows, have " + std::to_string(xs.size()));
    }
    if (n_max < 8 * n_min) {
        throw Error(ErrorCode::InsufficientData, "n range [" + std::to_string(n_min) + ", " + std::to_string(n_max) +
                                                     "] spans less than a factor of 8");
    }

    const auto count = static_cast<double>(xs.size());
    double mean_x = 0;
    double mean_y = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0;
    double sxy = 0;
    double syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    const double r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return ExponentFit{slope, intercept, r_squared, n_min, n_max, xs.size(), std::move(warnings)};
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (lo == 0) throw Error(ErrorCode::PreconditionFailed, "geometric grid must start at n >= 1");
    for (std::uint64_t n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

void write_comparison_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
    out << "n,ln_exact,ln_main,rel_err\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.ln_exact.to_string(kComparisonDigits) << ','
            << row.ln_main.to_string(kComparisonDigits) << ',' << row.rel_err.to_string(kComparisonDigits) << '\n';
    }
}

void write_comparison_json(std::ostream& out, std::span<const ComparisonRow> rows) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json item;
        item["n"] = row.n;
        item["ln_exact"] = row.ln_exact.to_string(kComparisonDigits);
        item["ln_main"] = row.ln_main.to_string(kComparisonDigits);
        item["rel_err"] = row.rel_err.to_string(kComparisonDigits);
        doc.push_back(std::move(item));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace colorpart
