#include "colorpart/exact.hpp"

#include "colorpart/error.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

namespace colorpart {

std::string_view to_string(SeriesMethod method) {
    switch (method) {
        case SeriesMethod::DivisorRecurrence: return "divisor";
        case SeriesMethod::EulerProduct: return "euler";
        case SeriesMethod::TupleConvolution: return "convolution";
    }
    return "unknown";
}

PartitionTable partition_table(std::size_t max_n) {
    std::vector<mpz_class> p(max_n + 1);
    p[0] = 1;
    for (std::size_t n = 1; n <= max_n; ++n) {
        mpz_class sum = 0;
        for (std::size_t j = 1;; ++j) {
            const std::size_t first = j * (3 * j - 1) / 2;
            if (first > n) break;
            const std::size_t second = first + j;  // j(3j+1)/2
            if (j % 2 == 1) {
                sum += p[n - first];
                if (second <= n) sum += p[n - second];
            } else {
                sum -= p[n - first];
                if (second <= n) sum -= p[n - second];
            }
        }
        p[n] = std::move(sum);
    }
    return PartitionTable{std::move(p)};
}

std::vector<std::uint64_t> divisor_sums(std::size_t max_n) {
    std::vector<std::uint64_t> sigma(max_n + 1, 0);
    for (std::size_t d = 1; d <= max_n; ++d) {
        for (std::size_t m = d; m <= max_n; m += d) sigma[m] += d;
    }
    return sigma;
}

std::vector<std::uint64_t> log_derivative_weights(const ColoredSpec& spec, std::size_t max_n) {
    const auto sigma = divisor_sums(max_n);
    std::vector<std::uint64_t> b(max_n + 1, 0);
    for (std::size_t i = 0; i < spec.k(); ++i) {
        const std::uint64_t s = spec.moduli()[i];
        const std::uint64_t scale = s * spec.multiplicities()[i];
        for (std::uint64_t t = 1; s * t <= max_n; ++t) {
            std::uint64_t term = 0;
            if (__builtin_mul_overflow(scale, sigma[t], &term) || __builtin_add_overflow(b[s * t], term, &b[s * t])) {
                throw Error(ErrorCode::TooLarge, "recurrence weight b(" + std::to_string(s * t) + ") overflows 64 bits");
            }
        }
    }
    return b;
}

ExactSeries g_series_divisor(const ColoredSpec& spec, std::size_t max_n) {
    const auto b = log_derivative_weights(spec, max_n);
    std::vector<mpz_class> g(max_n + 1);
    g[0] = 1;
    mpz_class acc;
    for (std::size_t n = 1; n <= max_n; ++n) {
        acc = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            mpz_addmul_ui(acc.get_mpz_t(), g[n - j].get_mpz_t(), static_cast<unsigned long>(b[j]));
        }
        mpz_divexact_ui(g[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    }
    return ExactSeries{spec, std::move(g), SeriesMethod::DivisorRecurrence};
}

ExactSeries g_series_euler(const ColoredSpec& spec, std::size_t max_n) {
    std::vector<mpz_class> c(max_n + 1, 0);
    c[0] = 1;
    // Increasing m: the first passes run while the coefficients are still short.
    for (std::size_t m = 1; m <= max_n; ++m) {
        for (std::size_t i = 0; i < spec.k(); ++i) {
            if (m % spec.moduli()[i] != 0) continue;
            for (Multiplicity rep = 0; rep < spec.multiplicities()[i]; ++rep) {
                for (std::size_t j = m; j <= max_n; ++j) c[j] += c[j - m];
            }
        }
    }
    return ExactSeries{spec, std::move(c), SeriesMethod::EulerProduct};
}

namespace {

std::vector<Modulus> fold_order(const ColoredSpec& spec) {
    auto colors = spec.color_moduli();
    std::sort(colors.begin(), colors.end(), std::greater<>());
    return colors;
}

}  // namespace

std::uint64_t tuple_convolution_cost(const ColoredSpec& spec, std::size_t n) {
    const auto colors = fold_order(spec);
    std::uint64_t cost = 0;
    for (std::size_t f = 1; f < colors.size(); ++f) {
        const std::uint64_t s = colors[f];
        if (f + 1 == colors.size()) {
            cost += n / s + 1;
        } else {
            for (std::uint64_t t = 0; t <= n; ++t) cost += t / s + 1;
        }
    }
    return cost;
}

mpz_class g_via_tuple_convolution(const ColoredSpec& spec, std::size_t n, const PartitionTable& ptable,
                                  std::uint64_t budget) {
    if (ptable.coeffs.size() <= n) {
        throw Error(ErrorCode::PreconditionFailed,
                    "partition table covers 0.." + std::to_string(ptable.max_n()) + ", need " + std::to_string(n));
    }
    const auto cost = tuple_convolution_cost(spec, n);
    if (cost > budget) {
        throw Error(ErrorCode::TooLarge,
                    "estimated " + std::to_string(cost) + " fold steps exceeds budget " + std::to_string(budget));
    }

    // Fold colors with large moduli first so the sparse arrays come early.
    const auto colors = fold_order(spec);
    std::vector<mpz_class> acc(n + 1, 0);
    for (std::size_t u = 0; colors[0] * u <= n; ++u) acc[colors[0] * u] = ptable[u];

    std::vector<mpz_class> next(n + 1);
    for (std::size_t f = 1; f < colors.size(); ++f) {
        const std::size_t s = colors[f];
        if (f + 1 == colors.size()) {
            mpz_class total = 0;
            for (std::size_t u = 0; s * u <= n; ++u) {
                const auto& rest = acc[n - s * u];
                if (sgn(rest) != 0) mpz_addmul(total.get_mpz_t(), rest.get_mpz_t(), ptable[u].get_mpz_t());
            }
            return total;
        }
        for (std::size_t t = 0; t <= n; ++t) {
            mpz_class& out = next[t];
            out = 0;
            for (std::size_t u = 0; s * u <= t; ++u) {
                const auto& rest = acc[t - s * u];
                if (sgn(rest) != 0) mpz_addmul(out.get_mpz_t(), rest.get_mpz_t(), ptable[u].get_mpz_t());
            }
        }
        acc.swap(next);
    }
    return acc[n];
}

void write_series_csv(std::ostream& out, const std::vector<mpz_class>& coeffs) {
    out << "n,g\n";
    for (std::size_t n = 0; n < coeffs.size(); ++n) out << n << ',' << coeffs[n].get_str() << '\n';
}

void write_series_raw(std::ostream& out, const std::vector<mpz_class>& coeffs) {
    for (const auto& c : coeffs) out << c.get_str() << '\n';
}

std::vector<mpz_class> read_series_raw(std::istream& in) {
    std::vector<mpz_class> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        mpz_class value;
        if (value.set_str(line, 10) != 0) throw Error(ErrorCode::ParseError, "bad integer line '" + line + "'");
        out.push_back(std::move(value));
    }
    return out;
}

}  // namespace colorpart
