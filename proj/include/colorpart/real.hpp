#pragma once

// Extended-precision real numbers backed by MPFR.
//
// A Real carries its own significand precision. Binary operations produce a
// result at the larger of the operand precisions; all rounding is to nearest.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace colorpart {

/// Working precision in bits of significand.
struct Precision {
    static constexpr unsigned kDefaultBits = 128;
    static constexpr unsigned kMinBits = 64;

    unsigned bits = kDefaultBits;

    /// A precision `extra` bits wider, used for intermediates.
    [[nodiscard]] Precision widened(unsigned extra) const { return Precision{bits + extra}; }
};

class Real {
public:
    explicit Real(Precision prec = {});
    Real(double value, Precision prec);
    Real(const mpz_class& value, Precision prec);
    Real(const mpq_class& value, Precision prec);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    [[nodiscard]] Precision precision() const { return Precision{static_cast<unsigned>(mpfr_get_prec(value_))}; }

    /// Copy rounded to a different precision.
    [[nodiscard]] Real rounded(Precision prec) const;

    [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    [[nodiscard]] long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant decimal digits, e.g. "1.360827634879543e-01".
    [[nodiscard]] std::string to_string(int digits) const;

    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(value_); }

    static Real pi(Precision prec);
    static Real ln2(Precision prec);
    static Real infinity(Precision prec);

    friend Real operator+(const Real& x, const Real& y);
    friend Real operator-(const Real& x, const Real& y);
    friend Real operator*(const Real& x, const Real& y);
    friend Real operator/(const Real& x, const Real& y);
    friend Real operator-(const Real& x);

    Real& operator+=(const Real& y) { return *this = *this + y; }
    Real& operator-=(const Real& y) { return *this = *this - y; }
    Real& operator*=(const Real& y) { return *this = *this * y; }

    friend bool operator<(const Real& x, const Real& y) { return mpfr_less_p(x.value_, y.value_) != 0; }
    friend bool operator>(const Real& x, const Real& y) { return y < x; }
    friend bool operator<=(const Real& x, const Real& y) { return mpfr_lessequal_p(x.value_, y.value_) != 0; }
    friend bool operator>=(const Real& x, const Real& y) { return y <= x; }
    friend bool operator==(const Real& x, const Real& y) { return mpfr_equal_p(x.value_, y.value_) != 0; }

    friend Real log(const Real& x);
    friend Real exp(const Real& x);
    friend Real expm1(const Real& x);
    friend Real sqrt(const Real& x);
    friend Real abs(const Real& x);
    friend Real pow(const Real& base, const Real& exponent);

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

private:
    mpfr_t value_;
};

}  // namespace colorpart
