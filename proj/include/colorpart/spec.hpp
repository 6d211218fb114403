#pragma once

// Colored-partition family (s, l) and the closed-form constants of its
// leading asymptotic term.
//
// A spec with moduli 1 = s_1 < s_2 < ... < s_k and multiplicities l_i >= 1
// counts partitions of n into parts carrying one of L = l_1 + ... + l_k
// colors, where the l_i colors of class i may only be used on parts that are
// multiples of s_i.

#include "colorpart/real.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace colorpart {

using Modulus = std::uint32_t;
using Multiplicity = std::uint32_t;

class ColoredSpec {
public:
    /// Validates raw lists and throws colorpart::Error naming the violated invariant.
    static ColoredSpec validate(std::span<const std::int64_t> s, std::span<const std::int64_t> l);

    /// Parses the compact text form `s=1,3;l=2,2`.
    static ColoredSpec parse(std::string_view text);
    /// Parses the JSON form `{"s":[1,3],"l":[2,2]}`.
    static ColoredSpec from_json(std::string_view json);

    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string to_json() const;

    [[nodiscard]] std::size_t k() const { return moduli_.size(); }
    [[nodiscard]] const std::vector<Modulus>& moduli() const { return moduli_; }
    [[nodiscard]] const std::vector<Multiplicity>& multiplicities() const { return multiplicities_; }
    [[nodiscard]] std::uint64_t total_colors() const;

    /// Modulus of every color in (i, j) order: s_1 repeated l_1 times, then s_2, ...
    [[nodiscard]] std::vector<Modulus> color_moduli() const;

    /// a(s,l) = sum l_i / s_i, exact.
    [[nodiscard]] mpq_class a() const;

    friend bool operator==(const ColoredSpec&, const ColoredSpec&) = default;

private:
    ColoredSpec(std::vector<Modulus> s, std::vector<Multiplicity> l)
        : moduli_(std::move(s)), multiplicities_(std::move(l)) {}

    std::vector<Modulus> moduli_;
    std::vector<Multiplicity> multiplicities_;
};

/// Constants of the main term M(n) = c * n^d * exp(exp_coeff * sqrt(n)).
struct AsymptoticConstants {
    mpq_class a;     ///< sum l_i / s_i
    mpq_class d;     ///< -3/4 - L/4
    Real c;          ///< prefactor
    Real exp_coeff;  ///< pi * sqrt(2a/3)
};

AsymptoticConstants constants(const ColoredSpec& spec, Precision prec = {});

/// Open interval of admissible box-width exponents eta.
struct EtaWindow {
    mpq_class lower;
    mpq_class upper;

    [[nodiscard]] bool contains(const mpq_class& eta) const { return lower < eta && eta < upper; }
};

/// Throws WindowUndefined unless k + l_1 >= 3.
EtaWindow eta_window(const ColoredSpec& spec);

/// Parses "4/5", "0.8" or "1" into an exact rational.
mpq_class parse_rational(std::string_view text);

}  // namespace colorpart
