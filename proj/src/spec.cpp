#include "colorpart/spec.hpp"

#include "colorpart/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

namespace colorpart {

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view field) {
    std::vector<std::int64_t> out;
    text = trim(text);
    if (text.empty()) return out;
    while (true) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
            throw Error(ErrorCode::ParseError,
                        "bad integer '" + std::string(item) + "' in field " + std::string(field));
        }
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << values[i];
    }
    return out.str();
}

}  // namespace

ColoredSpec ColoredSpec::validate(std::span<const std::int64_t> s, std::span<const std::int64_t> l) {
    if (s.empty() || l.empty()) throw Error(ErrorCode::EmptySpec, "s and l must be non-empty");
    if (s.size() != l.size()) {
        throw Error(ErrorCode::LengthMismatch, "s has " + std::to_string(s.size()) + " entries, l has " +
                                                   std::to_string(l.size()));
    }
    if (s.front() != 1) throw Error(ErrorCode::FirstModulusNotOne, "s_1 = " + std::to_string(s.front()));
    constexpr auto kMax = static_cast<std::int64_t>(std::numeric_limits<std::uint32_t>::max());
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] <= s[i - 1]) {
            throw Error(ErrorCode::NonIncreasingModuli, "s_" + std::to_string(i + 1) + " = " + std::to_string(s[i]) +
                                                            " <= s_" + std::to_string(i) + " = " +
                                                            std::to_string(s[i - 1]));
        }
        if (s[i] > kMax) throw Error(ErrorCode::ParseError, "modulus out of range");
    }
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] < 1) {
            throw Error(ErrorCode::NonPositiveMultiplicity,
                        "l_" + std::to_string(i + 1) + " = " + std::to_string(l[i]));
        }
        if (l[i] > kMax) throw Error(ErrorCode::ParseError, "multiplicity out of range");
    }
    return ColoredSpec(std::vector<Modulus>(s.begin(), s.end()), std::vector<Multiplicity>(l.begin(), l.end()));
}

ColoredSpec ColoredSpec::parse(std::string_view text) {
    std::string_view s_field;
    std::string_view l_field;
    bool have_s = false;
    bool have_l = false;
    while (!text.empty()) {
        auto semi = text.find(';');
        auto part = trim(text.substr(0, semi));
        auto eq = part.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::ParseError, "expected key=value, got '" + std::string(part) + "'");
        }
        auto key = trim(part.substr(0, eq));
        auto value = part.substr(eq + 1);
        if (key == "s" && !have_s) {
            s_field = value;
            have_s = true;
        } else if (key == "l" && !have_l) {
            l_field = value;
            have_l = true;
        } else {
            throw Error(ErrorCode::ParseError, "unexpected key '" + std::string(key) + "'");
        }
        if (semi == std::string_view::npos) break;
        text.remove_prefix(semi + 1);
    }
    if (!have_s || !have_l) throw Error(ErrorCode::ParseError, "spec needs both s=... and l=...");
    auto s = parse_int_list(s_field, "s");
    auto l = parse_int_list(l_field, "l");
    return validate(s, l);
}

ColoredSpec ColoredSpec::from_json(std::string_view json) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("s") || !doc.contains("l")) {
        throw Error(ErrorCode::ParseError, "expected an object with keys \"s\" and \"l\"");
    }
    auto read = [&](const char* key) {
        const auto& arr = doc.at(key);
        if (!arr.is_array()) throw Error(ErrorCode::ParseError, std::string(key) + " must be an array");
        std::vector<std::int64_t> out;
        for (const auto& v : arr) {
            if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, std::string(key) + " must hold integers");
            out.push_back(v.get<std::int64_t>());
        }
        return out;
    };
    auto s = read("s");
    auto l = read("l");
    return validate(s, l);
}

std::string ColoredSpec::to_text() const { return "s=" + join(moduli_) + ";l=" + join(multiplicities_); }

std::string ColoredSpec::to_json() const {
    nlohmann::ordered_json doc;
    doc["s"] = moduli_;
    doc["l"] = multiplicities_;
    return doc.dump();
}

std::uint64_t ColoredSpec::total_colors() const {
    return std::accumulate(multiplicities_.begin(), multiplicities_.end(), std::uint64_t{0});
}

std::vector<Modulus> ColoredSpec::color_moduli() const {
    std::vector<Modulus> out;
    for (std::size_t i = 0; i < k(); ++i) out.insert(out.end(), multiplicities_[i], moduli_[i]);
    return out;
}

mpq_class ColoredSpec::a() const {
    mpq_class sum = 0;
    for (std::size_t i = 0; i < k(); ++i) sum += mpq_class(multiplicities_[i], moduli_[i]);
    sum.canonicalize();
    return sum;
}

AsymptoticConstants constants(const ColoredSpec& spec, Precision prec) {
    const Precision work = prec.widened(32);
    const mpq_class a = spec.a();
    const auto total = static_cast<unsigned long>(spec.total_colors());
    const mpq_class L(total);

    mpq_class d = mpq_class(-3, 4) - L / 4;
    d.canonicalize();

    // ln c = -(3L+5)/4 ln 2 - (L+1)/4 ln 3 + (L+1)/4 ln a + sum (l_i/2) ln s_i
    const mpq_class exp2 = -(3 * L + 5) / 4;
    const mpq_class exp3 = -(L + 1) / 4;
    const mpq_class exp_a = (L + 1) / 4;
    Real ln_c = Real(exp2, work) * Real::ln2(work) + Real(exp3, work) * log(Real(mpq_class(3), work)) +
                Real(exp_a, work) * log(Real(a, work));
    for (std::size_t i = 0; i < spec.k(); ++i) {
        if (spec.moduli()[i] == 1) continue;
        const mpq_class half_l(spec.multiplicities()[i], 2);
        ln_c += Real(half_l, work) * log(Real(mpq_class(spec.moduli()[i]), work));
    }

    const mpq_class ratio = 2 * a / 3;
    Real exp_coeff = Real::pi(work) * sqrt(Real(ratio, work));

    return AsymptoticConstants{a, d, exp(ln_c).rounded(prec), exp_coeff.rounded(prec)};
}

EtaWindow eta_window(const ColoredSpec& spec) {
    if (spec.k() + spec.multiplicities().front() < 3) {
        throw Error(ErrorCode::WindowUndefined, "requires k + l_1 >= 3, spec is " + spec.to_text());
    }
    const mpq_class lower(3, 4);
    mpq_class upper(5, 6);
    const auto total = spec.total_colors();
    if (total > 2) {
        mpq_class alt = mpq_class(3, 4) * mpq_class(static_cast<unsigned long>(total - 1),
                                                    static_cast<unsigned long>(total - 2));
        alt.canonicalize();
        upper = std::min(upper, alt);
    }
    return EtaWindow{lower, upper};
}

mpq_class parse_rational(std::string_view text) {
    text = trim(text);
    auto bad = [&]() { return Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto all_digits = [](std::string_view t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    mpq_class out;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw bad();
        out = mpq_class(mpz_class(std::string(num), 10), mpz_class(std::string(den), 10));
        if (out.get_den() == 0) throw bad();
    } else {
        auto dot = body.find('.');
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw bad();
        if (!whole.empty() && !all_digits(whole)) throw bad();
        if (!frac.empty() && !all_digits(frac)) throw bad();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        out = mpq_class(digits, scale);
    }
    out.canonicalize();
    return negative ? mpq_class(-out) : out;
}

}  // namespace colorpart
