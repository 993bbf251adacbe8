#pragma once

#include <mpfr.h>

#include <string>

#include <gmpxx.h>

#include "tatefrob/error.hpp"

namespace tatefrob {

// Arbitrary-precision real number backed by MPFR. Binary operations carry the
// larger operand precision; rounding is to nearest everywhere.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long v, mpfr_prec_t prec);
    static BigFloat from_mpz(const mpz_class& v, mpfr_prec_t prec);
    static BigFloat pi(mpfr_prec_t prec);
    // sqrt(v) for v >= 0
    static BigFloat sqrt_of(const mpz_class& v, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    BigFloat operator/(const BigFloat& o) const;
    BigFloat operator-() const;
    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);

    BigFloat mul_ui(unsigned long u) const;
    BigFloat div_ui(unsigned long u) const;

    BigFloat exp() const;
    BigFloat cos() const;
    BigFloat sin() const;
    BigFloat abs() const;

    // nearest integer; |*this - result| is written to `residual` (same prec)
    mpz_class round_nearest(BigFloat* residual = nullptr) const;

    int cmp_d(double d) const { return mpfr_cmp_d(v_, d); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string() const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

private:
    mpfr_t v_;
};

// Componentwise complex number on top of BigFloat.
struct BigComplex {
    BigFloat re, im;

    BigComplex() = default;
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    static BigComplex zero(mpfr_prec_t prec) { return {BigFloat(prec), BigFloat(prec)}; }

    BigComplex operator+(const BigComplex& o) const { return {re + o.re, im + o.im}; }
    BigComplex operator-(const BigComplex& o) const { return {re - o.re, im - o.im}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    BigComplex operator/(const BigComplex& o) const {
        BigFloat n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    BigComplex& operator+=(const BigComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BigComplex mul_ui(unsigned long u) const { return {re.mul_ui(u), im.mul_ui(u)}; }
};

}  // namespace tatefrob
