#include "colorpart/oracles.hpp"

#include "colorpart/error.hpp"
#include "colorpart/real.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace colorpart::oracle {

namespace {

struct PartKind {
    std::uint64_t size;
};

// Walks kinds in order, choosing a multiplicity for each; every leaf is one colored partition.
void count_partitions(const std::vector<PartKind>& kinds, std::size_t index, std::uint64_t remaining,
                      mpz_class& count) {
    if (remaining == 0) {
        ++count;
        return;
    }
    if (index == kinds.size()) return;
    const auto size = kinds[index].size;
    for (std::uint64_t used = 0; used * size <= remaining; ++used) {
        count_partitions(kinds, index + 1, remaining - used * size, count);
    }
}

}  // namespace

mpz_class brute_force_colored_count(const ColoredSpec& spec, std::uint64_t n) {
    std::vector<PartKind> kinds;
    for (const auto s : spec.color_moduli()) {
        for (std::uint64_t m = s; m <= n; m += s) kinds.push_back(PartKind{m});
    }
    mpz_class count = 0;
    count_partitions(kinds, 0, n, count);
    return count;
}

std::vector<mpz_class> partitions_parts_bounded(std::size_t max_n) {
    // row[t] holds q(t, m) for the current m; q(t, 0) = [t == 0].
    std::vector<mpz_class> prev(max_n + 1, 0);
    prev[0] = 1;
    std::vector<mpz_class> row(max_n + 1);
    for (std::size_t m = 1; m <= max_n; ++m) {
        for (std::size_t t = 0; t <= max_n; ++t) {
            row[t] = prev[t];
            if (t >= m) row[t] += row[t - m];
        }
        std::swap(prev, row);
    }
    return prev;
}

double elimination_determinant(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

double box_quadrature_gaussian(const QuadFormSpec& q, double radius, double tolerance) {
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    q.validate();
    const double a0 = q.a0;
    if (q.k() == 1) {
        const double a1 = q.a_rest[0];
        auto f = [&](double x) { return std::exp(-(a0 + a1) * x * x); };
        return Quad::integrate(f, -radius, radius, 20, tolerance);
    }
    if (q.k() == 2) {
        const double a1 = q.a_rest[0];
        const double a2 = q.a_rest[1];
        auto outer = [&](double x) {
            auto inner = [&](double y) {
                const double s = x + y;
                return std::exp(-a0 * s * s - a1 * x * x - a2 * y * y);
            };
            return Quad::integrate(inner, -radius, radius, 20, tolerance);
        };
        return Quad::integrate(outer, -radius, radius, 20, tolerance);
    }
    throw Error(ErrorCode::PreconditionFailed, "box quadrature supports k = 1 or 2");
}

MonteCarloEstimate monte_carlo_gaussian(const QuadFormSpec& q, std::uint64_t samples, std::uint64_t seed) {
    q.validate();
    const std::size_t k = q.k();

    // Proposal density proportional to exp(-lambda |x|^2) with lambda <= smallest
    // eigenvalue of A, so the weights stay bounded.
    double lambda = q.a_rest[0];
    for (const auto ai : q.a_rest) lambda = std::min(lambda, ai);
    const double sigma = std::sqrt(1.0 / (2.0 * lambda));
    const double normaliser = std::pow(std::numbers::pi / lambda, static_cast<double>(k) / 2.0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> x(k);
    double mean = 0;
    double m2 = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double norm2 = 0;
        for (auto& xi : x) {
            xi = normal(rng);
            norm2 += xi * xi;
        }
        double total = 0;
        double form = 0;
        for (std::size_t r = 0; r < k; ++r) {
            total += x[r];
            form += q.a_rest[r] * x[r] * x[r];
        }
        form += q.a0 * total * total;
        const double weight = normaliser * std::exp(-form + lambda * norm2);
        // Welford update
        const double delta = weight - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (weight - mean);
    }
    const double variance = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
    return MonteCarloEstimate{mean, std::sqrt(variance / static_cast<double>(samples))};
}

ColoredSpec random_spec(std::mt19937_64& rng, unsigned max_k, unsigned max_l, unsigned max_s) {
    std::uniform_int_distribution<unsigned> pick_k(1, max_k);
    std::uniform_int_distribution<unsigned> pick_l(1, max_l);
    const unsigned k = pick_k(rng);
    std::vector<std::int64_t> candidates;
    for (std::int64_t s = 2; s <= static_cast<std::int64_t>(max_s); ++s) candidates.push_back(s);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<std::int64_t> s{1};
    s.insert(s.end(), candidates.begin(), candidates.begin() + (k - 1));
    std::sort(s.begin(), s.end());
    std::vector<std::int64_t> l;
    for (unsigned i = 0; i < k; ++i) l.push_back(pick_l(rng));
    return ColoredSpec::validate(s, l);
}

bool float_in_box(std::uint64_t u, const mpq_class& v, const mpq_class& eta) {
    const Precision prec{512};
    const Real vr(v, prec);
    const Real dist = abs(Real(mpz_class(static_cast<unsigned long>(u)), prec) - vr);
    return dist < pow(vr, Real(eta, prec));
}

}  // namespace colorpart::oracle
