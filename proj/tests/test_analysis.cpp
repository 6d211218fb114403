#include "colorpart/analysis.hpp"
#include "colorpart/asymptotic.hpp"
#include "colorpart/error.hpp"
#include "colorpart/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace colorpart;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected colorpart::Error");
    return ErrorCode::ParseError;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
    return std::exp(dist(rng));
}

QuadFormSpec random_form(std::mt19937_64& rng, std::size_t max_k) {
    std::uniform_int_distribution<std::size_t> dim(1, max_k);
    QuadFormSpec q{log_uniform(rng, 0.1, 10.0), {}};
    const auto k = dim(rng);
    for (std::size_t i = 0; i < k; ++i) q.a_rest.push_back(log_uniform(rng, 0.1, 10.0));
    return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Saddle and region split
// ---------------------------------------------------------------------------

TEST_CASE("saddle tuple examples") {
    CHECK(saddle_tuple(ColoredSpec::parse("s=1;l=1"), 37) == std::vector<mpq_class>{37});
    CHECK(saddle_tuple(ColoredSpec::parse("s=1,3;l=2,2"), 72) == std::vector<mpq_class>{27, 27, 3, 3});
    CHECK(saddle_tuple(ColoredSpec::parse("s=1,2;l=1,1"), 10) ==
          std::vector<mpq_class>{mpq_class(20, 3), mpq_class(5, 3)});
    CHECK(code_of([] { saddle_tuple(ColoredSpec::parse("s=1;l=1"), 0); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("saddle tuple lies on the constraint surface") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = oracle::random_spec(rng, 4, 4, 10);
        const std::uint64_t n = 1 + rng() % 5000;
        const auto v = saddle_tuple(spec, n);
        const auto moduli = spec.color_moduli();
        mpq_class weighted = 0;
        double root_sum = 0;
        for (std::size_t c = 0; c < v.size(); ++c) {
            weighted += moduli[c] * v[c];
            root_sum += std::sqrt(v[c].get_d());
        }
        CHECK(weighted == n);
        CHECK(root_sum == doctest::Approx(std::sqrt(spec.a().get_d() * static_cast<double>(n))).epsilon(1e-12));
    }
}

TEST_CASE("region split of s=1, l=2 at n = 10 and n = 100") {
    const auto spec = ColoredSpec::parse("s=1;l=2");
    const auto ptable = partition_table(100);
    const mpq_class eta(4, 5);

    const auto small = region_split(spec, 10, eta, ptable);
    CHECK(small.main_sum == 337);
    CHECK(small.tail_sum == 144);
    CHECK(small.main_sum + small.tail_sum == g_series_euler(spec, 10)[10]);

    const auto report = region_split(spec, 100, eta, ptable);
    CHECK(report.main_sum == mpz_class("1497364147076"));
    CHECK(report.tail_sum == mpz_class("346281673690"));
    CHECK(report.main_sum + report.tail_sum == g_series_euler(spec, 100)[100]);
    CHECK(report.tail_fraction.to_double() == doctest::Approx(0.18782).epsilon(1e-4));
}

TEST_CASE("tail fraction decreases with n") {
    const auto spec = ColoredSpec::parse("s=1;l=2");
    const auto ptable = partition_table(400);
    double previous = 1.0;
    for (std::uint64_t n : {100u, 200u, 400u}) {
        const auto report = region_split(spec, n, kDefaultEta, ptable);
        const double fraction = report.tail_fraction.to_double();
        CHECK(fraction < previous);
        previous = fraction;
    }
    CHECK(previous == doctest::Approx(0.14312).epsilon(1e-4));
}

TEST_CASE("region split matches an independent floating-point classifier") {
    const auto spec = ColoredSpec::parse("s=1,2;l=1,1");
    const std::uint64_t n = 60;
    const auto ptable = partition_table(n);
    const auto v = saddle_tuple(spec, n);
    mpz_class main_sum = 0;
    mpz_class tail_sum = 0;
    // Only the modulus-2 coordinate is free: u_1 = n - 2 u_2.
    for (std::uint64_t u2 = 0; 2 * u2 <= n; ++u2) {
        const mpz_class term = ptable[n - 2 * u2] * ptable[u2];
        (oracle::float_in_box(u2, v[1], kDefaultEta) ? main_sum : tail_sum) += term;
    }
    const auto report = region_split(spec, n, kDefaultEta, ptable);
    CHECK(report.main_sum == main_sum);
    CHECK(report.tail_sum == tail_sum);
}

TEST_CASE("region split errors") {
    const auto ptable = partition_table(50);
    CHECK(code_of([&] { region_split(ColoredSpec::parse("s=1;l=1"), 20, kDefaultEta, ptable); }) ==
          ErrorCode::WindowUndefined);
    CHECK(code_of([&] { region_split(ColoredSpec::parse("s=1;l=2"), 20, mpq_class(9, 10), ptable); }) ==
          ErrorCode::EtaOutOfWindow);
    CHECK(code_of([&] { region_split(ColoredSpec::parse("s=1;l=2"), 20, mpq_class(3, 4), ptable); }) ==
          ErrorCode::EtaOutOfWindow);
    CHECK(code_of([&] { region_split(ColoredSpec::parse("s=1;l=2"), 51, kDefaultEta, ptable); }) ==
          ErrorCode::PreconditionFailed);
    CHECK(code_of([&] { region_split(ColoredSpec::parse("s=1,2;l=2,2"), 50, kDefaultEta, ptable, 100); }) ==
          ErrorCode::BudgetExceeded);
}

TEST_CASE("region split conserves g(n) on random specs") {
    std::mt19937_64 rng(31);
    constexpr std::uint64_t kMax = 40;
    const auto ptable = partition_table(kMax);
    int checked = 0;
    while (checked < 15) {
        const auto spec = oracle::random_spec(rng, 3, 3, 6);
        if (spec.k() + spec.multiplicities().front() < 3) continue;
        const std::uint64_t n = 5 + rng() % (kMax - 4);
        const auto window = eta_window(spec);
        const mpq_class eta = (window.lower + window.upper) / 2;
        std::uint64_t visited = 0;
        const auto report = region_split(spec, n, eta, ptable, kDefaultTupleBudget, {},
                                         [&](std::span<const std::uint64_t>, bool) { ++visited; });
        CHECK_MESSAGE(report.main_sum + report.tail_sum == g_series_divisor(spec, n)[n], spec.to_text(), " n=", n);
        CHECK(static_cast<double>(visited) == region_split_cost(spec, n));
        ++checked;
    }
}

TEST_CASE("every enumerated tuple satisfies the constraint and the saddle maximizes sum sqrt(u)") {
    const auto spec = ColoredSpec::parse("s=1,2,3;l=2,1,2");
    const std::uint64_t n = 30;
    const auto ptable = partition_table(n);
    const auto moduli = spec.color_moduli();
    const auto v = saddle_tuple(spec, n);
    const double bound = std::sqrt(spec.a().get_d() * static_cast<double>(n));
    bool all_ok = true;
    std::uint64_t main_count = 0;
    region_split(spec, n, kDefaultEta, ptable, kDefaultTupleBudget, {},
                 [&](std::span<const std::uint64_t> u, bool in_main) {
                     std::uint64_t weighted = 0;
                     double root_sum = 0;
                     bool box = true;
                     for (std::size_t c = 0; c < u.size(); ++c) {
                         weighted += moduli[c] * u[c];
                         root_sum += std::sqrt(static_cast<double>(u[c]));
                         if (c > 0) box = box && oracle::float_in_box(u[c], v[c], kDefaultEta);
                     }
                     all_ok = all_ok && weighted == n && root_sum <= bound + 1e-9 && box == in_main;
                     main_count += in_main ? 1 : 0;
                 });
    CHECK(all_ok);
    CHECK(main_count > 0);
}

TEST_CASE("exact box predicate agrees with a 512-bit evaluation") {
    std::mt19937_64 rng(77);
    const std::vector<mpq_class> etas{mpq_class(4, 5), mpq_class(31, 40), mpq_class(33, 40), mpq_class(1, 2)};
    for (int trial = 0; trial < 3000; ++trial) {
        const mpq_class v(static_cast<long>(1 + rng() % 100000), static_cast<long>(1 + rng() % 12));
        const auto& eta = etas[rng() % etas.size()];
        const double spread = 2.0 * std::pow(v.get_d(), eta.get_d()) + 3.0;
        const double lo = std::max(0.0, v.get_d() - spread);
        const auto u = static_cast<std::uint64_t>(lo + static_cast<double>(rng() % 1000) / 1000.0 * 2.0 * spread);
        CHECK(in_saddle_box(u, v, eta) == oracle::float_in_box(u, v, eta));
    }
    // Exact boundary: |u - v| = v^eta is outside.
    CHECK_FALSE(in_saddle_box(32 + 16, mpq_class(32), mpq_class(4, 5)));
    CHECK(in_saddle_box(32 + 15, mpq_class(32), mpq_class(4, 5)));
    CHECK(in_saddle_box(5, mpq_class(5), mpq_class(4, 5)));
}

TEST_CASE("tail certificate") {
    const auto spec = ColoredSpec::parse("s=1;l=2");
    const auto consts = constants(spec);
    const auto ptable = partition_table(400);
    for (std::uint64_t n : {100u, 200u, 400u}) {
        const auto cert = tail_bound_certificate(region_split(spec, n, kDefaultEta, ptable), consts);
        CHECK(cert.gap.sign() < 0);
        CHECK(cert.c3.sign() > 0);
    }

    const auto report = region_split(spec, 100, kDefaultEta, ptable);
    auto empty = report;
    empty.tail_sum = 0;
    const auto inf = tail_bound_certificate(empty, consts);
    CHECK(std::isinf(inf.c3.to_double()));
    CHECK(inf.c3.sign() > 0);
}

TEST_CASE("region report JSON") {
    const auto spec = ColoredSpec::parse("s=1;l=2");
    std::ostringstream out;
    write_region_report_json(out, region_split(spec, 10, kDefaultEta, partition_table(10)));
    const auto text = out.str();
    CHECK(text.find(R"("main_sum": "337")") != std::string::npos);
    CHECK(text.find(R"("tail_sum": "144")") != std::string::npos);
    CHECK(text.find(R"("g": "481")") != std::string::npos);
    CHECK(text.find(R"("eta": "4/5")") != std::string::npos);
}

// ---------------------------------------------------------------------------
// Sum versus integral
// ---------------------------------------------------------------------------

TEST_CASE("sum versus integral examples") {
    const auto constant = sum_vs_integral([](double) { return 2.0; }, 1.0, 11.0, 0);
    CHECK(constant.sum == doctest::Approx(22.0));
    CHECK(constant.integral == doctest::Approx(20.0));
    CHECK(constant.bound == doctest::Approx(4.0));
    CHECK(constant.holds);

    const double c1 = std::numbers::pi * std::sqrt(2.0 / 3.0);
    const auto growth = sum_vs_integral([c1](double x) { return std::exp(c1 * std::sqrt(x)); }, 1.0, 500.0, 0);
    CHECK(growth.holds);
    CHECK(growth.max_abs == doctest::Approx(std::exp(c1 * std::sqrt(500.0))).epsilon(1e-12));
    CHECK(std::abs(growth.sum - growth.integral) > 0.1 * growth.max_abs);

    // Slice through the saddle of sqrt(u) + sqrt(100 - u): one interior maximum at u = 50.
    const auto slice = sum_vs_integral(
        [c1](double u) { return std::exp(c1 * (std::sqrt(u) + std::sqrt(100.0 - u)) - c1 * std::sqrt(200.0)); }, 0.0,
        100.0, 1);
    CHECK(slice.holds);
    CHECK(slice.max_abs == doctest::Approx(1.0).epsilon(1e-9));

    // sin on [0, 3 pi] has three interior critical points.
    const auto wave = sum_vs_integral([](double x) { return std::sin(x); }, 0.0, 3.0 * std::numbers::pi, 3);
    CHECK(wave.holds);
    CHECK(wave.integral == doctest::Approx(2.0).epsilon(1e-10));

    CHECK(code_of([] { sum_vs_integral([](double) { return 1.0; }, 0.0, 0.5, 0); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("sum versus integral on random monotone and unimodal functions") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const double lo = std::floor(unit(rng) * 20.0) + unit(rng);
        const double hi = lo + 1.0 + unit(rng) * 300.0;
        const double rate = 0.01 + unit(rng);
        const double centre = lo + unit(rng) * (hi - lo);
        const double width = 0.5 + unit(rng) * 20.0;
        const auto rising = sum_vs_integral([rate](double x) { return std::log1p(rate * x); }, lo, hi, 0);
        const auto decaying = sum_vs_integral([rate](double x) { return std::exp(-rate * x); }, lo, hi, 0);
        const auto bump = sum_vs_integral(
            [=](double x) { return std::exp(-(x - centre) * (x - centre) / (width * width)); }, lo, hi, 1);
        CHECK(rising.holds);
        CHECK(decaying.holds);
        CHECK(bump.holds);
    }
}

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

TEST_CASE("quadratic form matrix and determinant examples") {
    const QuadFormSpec one{1.0, {2.0}};
    CHECK(quadform_matrix(one) == std::vector<std::vector<double>>{{3.0}});
    CHECK(det_closed_form(one) == doctest::Approx(3.0));

    const QuadFormSpec two{1.0, {1.0, 1.0}};
    CHECK(quadform_matrix(two) == std::vector<std::vector<double>>{{2.0, 1.0}, {1.0, 2.0}});
    CHECK(det_closed_form(two) == doctest::Approx(3.0));

    const QuadFormSpec three{2.0, {1.0, 4.0, 0.5}};
    CHECK(det_closed_form(three) == doctest::Approx(oracle::elimination_determinant(quadform_matrix(three))));

    CHECK(code_of([] { det_closed_form(QuadFormSpec{1.0, {}}); }) == ErrorCode::PreconditionFailed);
    CHECK(code_of([] { det_closed_form(QuadFormSpec{0.0, {1.0}}); }) == ErrorCode::PreconditionFailed);
    CHECK(code_of([] { det_closed_form(QuadFormSpec{1.0, {1.0, -2.0}}); }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("closed-form determinant matches elimination on random forms") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto q = random_form(rng, 8);
        const double closed = det_closed_form(q);
        const double elim = oracle::elimination_determinant(quadform_matrix(q));
        CHECK(std::abs(closed - elim) / std::abs(elim) < 1e-9);

        // a_0 a_1 ... a_k (1/a_0 + ... + 1/a_k) = a_1 ... a_k + a_0 sum_j prod_{i != j} a_i
        double prod_rest = 1.0;
        for (const auto ai : q.a_rest) prod_rest *= ai;
        double expanded = prod_rest;
        for (const auto aj : q.a_rest) expanded += q.a0 * prod_rest / aj;
        CHECK(std::abs(closed - expanded) / expanded < 1e-12);
    }
}

TEST_CASE("Gaussian integral against quadrature") {
    CHECK(gaussian_quadform_integral(QuadFormSpec{1.0, {1.0}}) == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)));
    CHECK(gaussian_quadform_integral(QuadFormSpec{1.0, {1.0, 1.0}}) ==
          doctest::Approx(std::numbers::pi / std::sqrt(3.0)));
    for (const auto& q : {QuadFormSpec{1.0, {1.0}}, QuadFormSpec{0.5, {2.0}}, QuadFormSpec{1.0, {1.0, 1.0}},
                          QuadFormSpec{0.7, {1.3, 2.1}}}) {
        const double closed = gaussian_quadform_integral(q);
        const double numeric = oracle::box_quadrature_gaussian(q, kDefaultTruncationRadius);
        CHECK(std::abs(closed - numeric) / closed < 1e-6);
    }
}

TEST_CASE("Gaussian integral against Monte Carlo in three dimensions") {
    const QuadFormSpec q{0.8, {1.0, 1.5, 2.5}};
    const auto estimate = oracle::monte_carlo_gaussian(q, 400'000, 9);
    const double closed = gaussian_quadform_integral(q);
    CHECK(estimate.standard_error > 0);
    CHECK(std::abs(estimate.mean - closed) < 4.0 * estimate.standard_error);
    CHECK(estimate.standard_error / closed < 1e-2);

    const auto again = oracle::monte_carlo_gaussian(q, 400'000, 9);
    CHECK(again.mean == estimate.mean);
}

TEST_CASE("truncation error bound") {
    CHECK(truncation_error_bound(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(truncation_error_bound(3.0) == doctest::Approx(std::exp(-9.0)));
    // The true one-sided tail of exp(-t^2) beyond r is (sqrt(pi)/2) erfc(r).
    for (const double r : {1.0, 1.5, 2.0, 4.0, 8.0}) {
        CHECK(truncation_error_bound(r) >= std::sqrt(std::numbers::pi) / 2.0 * std::erfc(r));
    }
    CHECK(code_of([] { truncation_error_bound(0.5); }) == ErrorCode::RadiusTooSmall);
}
