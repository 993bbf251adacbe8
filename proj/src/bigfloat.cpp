#include "tatefrob/bigfloat.hpp"

namespace tatefrob {

namespace {
mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(a.prec(), b.prec());
}
}  // namespace

BigFloat BigFloat::from_long(long v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt_of(const mpz_class& v, mpfr_prec_t prec) {
    BigFloat r = from_mpz(v, prec);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
    BigFloat r(join(*this, o));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
    BigFloat r(join(*this, o));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
    BigFloat r(join(*this, o));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
    BigFloat r(join(*this, o));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    if (o.prec() > prec()) return *this = *this + o;
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    if (o.prec() > prec()) return *this = *this - o;
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    if (o.prec() > prec()) return *this = *this * o;
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::mul_ui(unsigned long u) const {
    BigFloat r(prec());
    mpfr_mul_ui(r.v_, v_, u, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::div_ui(unsigned long u) const {
    BigFloat r(prec());
    mpfr_div_ui(r.v_, v_, u, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::exp() const {
    BigFloat r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::cos() const {
    BigFloat r(prec());
    mpfr_cos(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sin() const {
    BigFloat r(prec());
    mpfr_sin(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

mpz_class BigFloat::round_nearest(BigFloat* residual) const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    if (residual) {
        BigFloat d(prec());
        mpfr_sub_z(d.v_, v_, z.get_mpz_t(), MPFR_RNDN);
        mpfr_abs(d.v_, d.v_, MPFR_RNDN);
        *residual = std::move(d);
    }
    return z;
}

std::string BigFloat::to_string() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.20Rg", v_) < 0) return "<mpfr>";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace tatefrob
