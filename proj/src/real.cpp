#include "colorpart/real.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace colorpart {

namespace {

mpfr_prec_t wider(const Real& x, const Real& y) {
    return std::max(mpfr_get_prec(x.get()), mpfr_get_prec(y.get()));
}

}  // namespace

Real::Real(Precision prec) {
    if (prec.bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
    mpfr_init2(value_, static_cast<mpfr_prec_t>(prec.bits));
    mpfr_set_zero(value_, 1);
}

Real::Real(double value, Precision prec) : Real(prec) { mpfr_set_d(value_, value, MPFR_RNDN); }

Real::Real(const mpz_class& value, Precision prec) : Real(prec) {
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, Precision prec) : Real(prec) {
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::rounded(Precision prec) const {
    Real r(prec);
    mpfr_set(r.value_, value_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    if (digits < 1) digits = 1;
    int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), "%.*Re", digits - 1, value_);
    out.resize(static_cast<std::size_t>(n));
    return out;
}

Real Real::pi(Precision prec) {
    Real r(prec);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

Real Real::ln2(Precision prec) {
    Real r(prec);
    mpfr_const_log2(r.value_, MPFR_RNDN);
    return r;
}

Real Real::infinity(Precision prec) {
    Real r(prec);
    mpfr_set_inf(r.value_, 1);
    return r;
}

Real operator+(const Real& x, const Real& y) {
    Real r(Precision{static_cast<unsigned>(wider(x, y))});
    mpfr_add(r.value_, x.value_, y.value_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& x, const Real& y) {
    Real r(Precision{static_cast<unsigned>(wider(x, y))});
    mpfr_sub(r.value_, x.value_, y.value_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& x, const Real& y) {
    Real r(Precision{static_cast<unsigned>(wider(x, y))});
    mpfr_mul(r.value_, x.value_, y.value_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& x, const Real& y) {
    Real r(Precision{static_cast<unsigned>(wider(x, y))});
    mpfr_div(r.value_, x.value_, y.value_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& x) {
    Real r(x.precision());
    mpfr_neg(r.value_, x.value_, MPFR_RNDN);
    return r;
}

Real log(const Real& x) {
    Real r(x.precision());
    mpfr_log(r.value_, x.value_, MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r(x.precision());
    mpfr_exp(r.value_, x.value_, MPFR_RNDN);
    return r;
}

Real expm1(const Real& x) {
    Real r(x.precision());
    mpfr_expm1(r.value_, x.value_, MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r(x.precision());
    mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
    return r;
}

Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.value_, x.value_, MPFR_RNDN);
    return r;
}

Real pow(const Real& base, const Real& exponent) {
    Real r(Precision{static_cast<unsigned>(wider(base, exponent))});
    mpfr_pow(r.value_, base.value_, exponent.value_, MPFR_RNDN);
    return r;
}

}  // namespace colorpart
