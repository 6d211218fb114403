#include "colorpart/analysis.hpp"

#include "colorpart/asymptotic.hpp"
#include "colorpart/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace colorpart {

std::vector<mpq_class> saddle_tuple(const ColoredSpec& spec, std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::PreconditionFailed, "saddle tuple needs n >= 1");
    const mpq_class a = spec.a();
    std::vector<mpq_class> v;
    for (const auto s : spec.color_moduli()) {
        mpq_class value = mpq_class(mpz_class(static_cast<unsigned long>(n))) / (mpq_class(s) * s * a);
        value.canonicalize();
        v.push_back(std::move(value));
    }
    return v;
}

bool in_saddle_box(std::uint64_t u, const mpq_class& v, const mpq_class& eta) {
    mpq_class dist = mpq_class(mpz_class(static_cast<unsigned long>(u))) - v;
    dist = abs(dist);
    if (sgn(dist) == 0) return true;
    // |u - v| < v^(p/q)  <=>  |u - v|^q < v^p, both sides positive.
    const unsigned long p = eta.get_num().get_ui();
    const unsigned long q = eta.get_den().get_ui();
    mpz_class lhs_num, lhs_den, rhs_num, rhs_den;
    mpz_pow_ui(lhs_num.get_mpz_t(), dist.get_num_mpz_t(), q);
    mpz_pow_ui(lhs_den.get_mpz_t(), dist.get_den_mpz_t(), q);
    mpz_pow_ui(rhs_num.get_mpz_t(), v.get_num_mpz_t(), p);
    mpz_pow_ui(rhs_den.get_mpz_t(), v.get_den_mpz_t(), p);
    return lhs_num * rhs_den < rhs_num * lhs_den;
}

namespace {

struct BoxRange {
    std::uint64_t lo;
    std::uint64_t hi;

    [[nodiscard]] bool contains(std::uint64_t u) const { return lo <= u && u <= hi; }
};

// The box {u : |u - v| < v^eta} is an interval containing the integer nearest v.
BoxRange box_range(const mpq_class& v, const mpq_class& eta) {
    const double vd = v.get_d();
    const double w = std::pow(vd, eta.get_d());
    auto lo = static_cast<std::int64_t>(std::floor(vd - w)) - 1;
    lo = std::max<std::int64_t>(lo, 0);
    auto u = static_cast<std::uint64_t>(lo);
    while (!in_saddle_box(u, v, eta)) ++u;
    BoxRange range{u, u};
    auto hi = static_cast<std::uint64_t>(std::floor(vd + w)) + 2;
    while (hi > range.lo && !in_saddle_box(hi, v, eta)) --hi;
    range.hi = hi;
    return range;
}

class TupleWalker {
public:
    TupleWalker(std::vector<Modulus> moduli, std::vector<BoxRange> boxes, const PartitionTable& ptable,
                const TupleObserver& observer)
        : moduli_(std::move(moduli)),
          boxes_(std::move(boxes)),
          ptable_(ptable),
          observer_(observer),
          tuple_(moduli_.size(), 0),
          partial_(moduli_.size()) {}

    void run(std::uint64_t n, mpz_class& main_sum, mpz_class& tail_sum) {
        main_ = &main_sum;
        tail_ = &tail_sum;
        partial_[0] = 1;
        visit(1, n, true);
    }

private:
    // Depth d fixes free coordinate d; coordinate 0 (modulus 1) absorbs the remainder.
    void visit(std::size_t depth, std::uint64_t remaining, bool inside) {
        if (depth == moduli_.size()) {
            tuple_[0] = remaining;
            mpz_class& target = inside ? *main_ : *tail_;
            mpz_addmul(target.get_mpz_t(), partial_[depth - 1].get_mpz_t(), ptable_[remaining].get_mpz_t());
            if (observer_) observer_(tuple_, inside);
            return;
        }
        const std::uint64_t s = moduli_[depth];
        for (std::uint64_t u = 0; s * u <= remaining; ++u) {
            tuple_[depth] = u;
            partial_[depth] = partial_[depth - 1] * ptable_[u];
            visit(depth + 1, remaining - s * u, inside && boxes_[depth].contains(u));
        }
    }

    std::vector<Modulus> moduli_;
    std::vector<BoxRange> boxes_;
    const PartitionTable& ptable_;
    const TupleObserver& observer_;
    std::vector<std::uint64_t> tuple_;
    std::vector<mpz_class> partial_;
    mpz_class* main_ = nullptr;
    mpz_class* tail_ = nullptr;
};

}  // namespace

double region_split_cost(const ColoredSpec& spec, std::uint64_t n) {
    const auto moduli = spec.color_moduli();
    std::vector<double> ways(n + 1, 0.0);
    ways[0] = 1.0;
    for (std::size_t c = 1; c < moduli.size(); ++c) {
        const std::uint64_t s = moduli[c];
        for (std::uint64_t t = s; t <= n; ++t) ways[t] += ways[t - s];
    }
    double total = 0;
    for (const auto w : ways) total += w;
    return total;
}

RegionSplitReport region_split(const ColoredSpec& spec, std::uint64_t n, const mpq_class& eta,
                               const PartitionTable& ptable, std::uint64_t budget, Precision prec,
                               const TupleObserver& observer) {
    const auto window = eta_window(spec);
    if (!window.contains(eta)) {
        throw Error(ErrorCode::EtaOutOfWindow, "eta = " + eta.get_str() + " outside (" + window.lower.get_str() +
                                                   ", " + window.upper.get_str() + ")");
    }
    if (n == 0) throw Error(ErrorCode::PreconditionFailed, "region split needs n >= 1");
    if (ptable.coeffs.size() <= n) {
        throw Error(ErrorCode::PreconditionFailed, "partition table too short for n = " + std::to_string(n));
    }
    const double cost = region_split_cost(spec, n);
    if (cost > static_cast<double>(budget)) {
        throw Error(ErrorCode::BudgetExceeded, "about " + std::to_string(static_cast<std::uint64_t>(cost)) +
                                                   " tuples exceeds budget " + std::to_string(budget));
    }

    auto v = saddle_tuple(spec, n);
    auto moduli = spec.color_moduli();
    std::vector<BoxRange> boxes;
    boxes.reserve(v.size());
    for (const auto& vc : v) boxes.push_back(box_range(vc, eta));

    mpz_class main_sum = 0;
    mpz_class tail_sum = 0;
    TupleWalker walker(std::move(moduli), std::move(boxes), ptable, observer);
    walker.run(n, main_sum, tail_sum);

    const Real total(mpz_class(main_sum + tail_sum), prec);
    Real fraction = Real(tail_sum, prec) / total;
    return RegionSplitReport{spec, n, eta, std::move(v), std::move(main_sum), std::move(tail_sum), std::move(fraction)};
}

TailCertificate tail_bound_certificate(const RegionSplitReport& report, const AsymptoticConstants& constants) {
    const Precision prec = report.tail_fraction.precision();
    if (sgn(report.tail_sum) == 0) {
        return TailCertificate{-Real::infinity(prec), Real::infinity(prec)};
    }
    const Precision work = prec.widened(32);
    const Real n_real(mpz_class(static_cast<unsigned long>(report.n)), work);
    Real gap = ln_of_bigint(report.tail_sum, work) - constants.exp_coeff.rounded(work) * sqrt(n_real);
    const mpq_class exponent = 2 * report.eta - mpq_class(3, 2);
    Real c3 = -gap / pow(n_real, Real(exponent, work));
    return TailCertificate{gap.rounded(prec), c3.rounded(prec)};
}

void write_region_report_json(std::ostream& out, const RegionSplitReport& report) {
    nlohmann::ordered_json doc;
    doc["spec"] = nlohmann::ordered_json::parse(report.spec.to_json());
    doc["n"] = report.n;
    doc["eta"] = report.eta.get_str();
    auto v = nlohmann::ordered_json::array();
    for (const auto& vc : report.v) v.push_back(vc.get_str());
    doc["v"] = std::move(v);
    doc["main_sum"] = report.main_sum.get_str();
    doc["tail_sum"] = report.tail_sum.get_str();
    doc["g"] = mpz_class(report.main_sum + report.tail_sum).get_str();
    doc["tail_fraction"] = report.tail_fraction.to_string(kComparisonDigits);
    out << doc.dump(2) << '\n';
}

SumIntegralCheck sum_vs_integral(const std::function<double(double)>& f, double lo, double hi,
                                 unsigned critical_points) {
    if (!(hi - lo >= 1.0)) throw Error(ErrorCode::PreconditionFailed, "need b - a >= 1");

    double sum = 0;
    for (auto n = std::ceil(lo); n <= hi; n += 1.0) sum += f(n);

    double max_abs = std::max(std::abs(f(lo)), std::abs(f(hi)));
    for (std::size_t i = 0; i <= kMaxGridPoints; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kMaxGridPoints);
        max_abs = std::max(max_abs, std::abs(f(x)));
    }

    double error = 0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, kQuadratureRelTol, &error);
    // Cancelling integrands are judged against the scale max|f| (b - a).
    const double scale = std::max(std::abs(integral), max_abs * (hi - lo) * kQuadratureRelTol);
    if (!std::isfinite(integral) || error > 10 * kQuadratureRelTol * scale) {
        throw Error(ErrorCode::QuadratureFailure, "adaptive quadrature error estimate " + std::to_string(error));
    }
    const double bound = 2.0 * (critical_points + 1.0) * max_abs;
    return SumIntegralCheck{sum, integral, max_abs, bound, std::abs(sum - integral) <= bound};
}

void QuadFormSpec::validate() const {
    if (a_rest.empty()) throw Error(ErrorCode::PreconditionFailed, "quadratic form needs k >= 1");
    if (!(a0 > 0)) throw Error(ErrorCode::PreconditionFailed, "a_0 must be positive");
    for (const auto ai : a_rest) {
        if (!(ai > 0)) throw Error(ErrorCode::PreconditionFailed, "a_i must be positive");
    }
}

std::vector<std::vector<double>> quadform_matrix(const QuadFormSpec& q) {
    q.validate();
    std::vector<std::vector<double>> m(q.k(), std::vector<double>(q.k(), q.a0));
    for (std::size_t i = 0; i < q.k(); ++i) m[i][i] += q.a_rest[i];
    return m;
}

double det_closed_form(const QuadFormSpec& q) {
    q.validate();
    double product = q.a0;
    double reciprocal_sum = 1.0 / q.a0;
    for (const auto ai : q.a_rest) {
        product *= ai;
        reciprocal_sum += 1.0 / ai;
    }
    return product * reciprocal_sum;
}

double gaussian_quadform_integral(const QuadFormSpec& q) {
    const double half_k = static_cast<double>(q.k()) / 2.0;
    return std::pow(std::numbers::pi, half_k) / std::sqrt(det_closed_form(q));
}

double truncation_error_bound(double radius) {
    if (!(radius >= 1.0)) throw Error(ErrorCode::RadiusTooSmall, "radius " + std::to_string(radius) + " < 1");
    return std::exp(-radius * radius);
}

}  // namespace colorpart
