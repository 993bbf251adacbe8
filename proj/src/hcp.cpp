#include "tatefrob/hcp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

namespace tatefrob {

namespace {

constexpr long kDiscriminantCap = 50000;

BigFloat at_prec(const BigFloat& v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set(r.raw(), v.raw(), MPFR_RNDN);
    return r;
}

long precision_floor_bits() {
    if (const char* env = std::getenv("TATEFROB_PREC_FLOOR")) {
        long v = std::atol(env);
        if (v >= 32) return v;
    }
    return 256;
}

// sigma_3 sieve: s[n] = sum of d^3 over d | n, for 1 <= n <= T.
std::vector<unsigned long> sigma3_table(unsigned long T) {
    std::vector<unsigned long> s(T + 1, 0);
    for (unsigned long d = 1; d <= T; ++d) {
        unsigned long d3 = d * d * d;
        for (unsigned long m = d; m <= T; m += d) s[m] += d3;
    }
    return s;
}

// signs[n] = +1/-1 if n is a generalized pentagonal number k(3k -+ 1)/2, else 0.
std::vector<int> pentagonal_signs(unsigned long T) {
    std::vector<int> sg(T + 1, 0);
    for (unsigned long k = 1;; ++k) {
        unsigned long g1 = k * (3 * k - 1) / 2;
        unsigned long g2 = k * (3 * k + 1) / 2;
        if (g1 > T) break;
        int s = (k % 2) ? -1 : 1;
        sg[g1] = s;
        if (g2 <= T) sg[g2] = s;
    }
    return sg;
}

std::vector<mpz_class> poly_mul_z(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// One full attempt at the given working precision; returns false when a
// coefficient misses the 0.25 rounding gate.
bool hcp_attempt(const Discriminant& D, const std::vector<ReducedForm>& forms, mpfr_prec_t prec,
                 std::vector<mpz_class>& out) {
    const mpz_class absd = -D.value();
    BigFloat sqrtd = BigFloat::sqrt_of(absd, prec);

    // product of (x - j_i) with BigComplex coefficients, ascending
    std::vector<BigComplex> c;
    c.push_back({BigFloat::from_long(1, prec), BigFloat(prec)});
    for (const ReducedForm& f : forms) {
        unsigned long A2 = 2 * f.A.get_ui();
        BigComplex tau{BigFloat::from_mpz(-f.B, prec).div_ui(A2), sqrtd.div_ui(A2)};
        BigComplex j = j_value(tau, prec);
        // multiply the running product by (x - j)
        std::vector<BigComplex> next(c.size() + 1, BigComplex::zero(prec));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] = next[i] - j * c[i];
        }
        c = std::move(next);
    }

    out.clear();
    out.reserve(c.size());
    for (const BigComplex& z : c) {
        BigFloat residual;
        mpz_class v = z.re.round_nearest(&residual);
        if (residual.cmp_d(0.25) >= 0) return false;
        if (z.im.abs().cmp_d(0.25) >= 0) return false;
        out.push_back(std::move(v));
    }
    return true;
}

}  // namespace

BigComplex j_value(const BigComplex& tau, mpfr_prec_t prec) {
    if (prec < 32)
        throw Error(errc::PrecisionUnderflow,
                    "need at least 32 bits to separate the leading 1/q term");
    const mpfr_prec_t wp = prec + 64;
    double y = tau.im.to_double();
    if (!(y >= 0.866))
        throw Error(errc::InternalInconsistency, "tau is outside the reduced fundamental region");

    // q = e^{2*pi*i*tau} = e^{-2*pi*y} * (cos(2*pi*x) + i*sin(2*pi*x))
    BigFloat pi = BigFloat::pi(wp);
    BigFloat two_pi = pi.mul_ui(2);
    BigFloat ang = two_pi * at_prec(tau.re, wp);
    BigFloat mag = (-(two_pi * at_prec(tau.im, wp))).exp();
    BigComplex q{mag * ang.cos(), mag * ang.sin()};

    // series length: |q|^T <= 2^{-wp} plus a fixed 32-term guard
    unsigned long T =
        static_cast<unsigned long>(std::ceil(static_cast<double>(wp) * std::log(2.0) / (2 * M_PI * y))) + 32;
    std::vector<unsigned long> s3 = sigma3_table(T);
    std::vector<int> pent = pentagonal_signs(T);

    BigComplex e4{BigFloat::from_long(1, wp), BigFloat(wp)};
    BigComplex eta{BigFloat::from_long(1, wp), BigFloat(wp)};
    BigComplex qn{BigFloat::from_long(1, wp), BigFloat(wp)};
    for (unsigned long n = 1; n <= T; ++n) {
        qn = qn * q;
        if (s3[n]) e4 += qn.mul_ui(240).mul_ui(s3[n]);
        if (pent[n] == 1)
            eta += qn;
        else if (pent[n] == -1)
            eta = eta - qn;
    }

    BigComplex e2 = eta * eta;
    BigComplex e8 = e2 * e2 * e2 * e2;
    BigComplex e24 = e8 * e8 * e8;
    BigComplex num = e4 * e4 * e4;
    BigComplex den = q * e24;
    return num / den;
}

mpfr_prec_t required_precision(const Discriminant& D) {
    std::vector<ReducedForm> forms = reduced_forms(D);
    double sum_inv_a = 0;
    for (const ReducedForm& f : forms) sum_inv_a += 1.0 / f.A.get_d();
    double absd = mpz_class(-D.value()).get_d();
    long core = static_cast<long>(std::ceil(M_PI * std::sqrt(absd) * sum_inv_a / std::log(2.0)));
    return static_cast<mpfr_prec_t>(core + 64 * static_cast<long>(forms.size()) + precision_floor_bits());
}

ClassPoly hilbert_class_polynomial_at(const Discriminant& D, mpfr_prec_t start_prec) {
    if (-D.value() > kDiscriminantCap)
        throw Error(errc::CapExceeded, "|D| exceeds the class polynomial cap of 50000");
    std::vector<ReducedForm> forms = reduced_forms(D);
    mpfr_prec_t prec = start_prec;
    std::vector<mpz_class> coeffs;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        if (hcp_attempt(D, forms, prec, coeffs)) {
            if (coeffs.size() != forms.size() + 1 || coeffs.back() != 1)
                throw Error(errc::InternalInconsistency, "class polynomial is not monic of class-number degree");
            return ClassPoly{D, std::move(coeffs)};
        }
        prec *= 2;
    }
    throw Error(errc::PrecisionExhausted, "rounding gate failed after 3 precision doublings");
}

ClassPoly hilbert_class_polynomial(const Discriminant& D) {
    static std::map<std::pair<long, long>, ClassPoly> cache;
    static std::mutex mu;
    const long key_d = D.value().get_si();
    const long key_floor = precision_floor_bits();
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({key_d, key_floor});
        if (it != cache.end()) return it->second;
    }
    ClassPoly result = hilbert_class_polynomial_at(D, required_precision(D));
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(std::make_pair(key_d, key_floor), std::move(result)).first->second;
}

ScriptP script_p(const mpz_class& D) {
    if (D > 0) throw Error(errc::BadDiscriminant, "script-P takes D <= 0");
    ScriptP out;
    if (D == 0) {
        out.kind = ScriptP::Kind::ZERO;
        return out;  // the zero polynomial: empty coefficient list
    }
    unsigned long m4 = mpz_fdiv_ui(D.get_mpz_t(), 4);
    if (m4 == 2 || m4 == 3) {
        out.kind = ScriptP::Kind::ONE;
        out.expanded = {mpz_class(1)};
        return out;
    }
    out.kind = ScriptP::Kind::PRODUCT;
    out.expanded = {mpz_class(1)};
    for (const auto& [h, dp] : superorders(Discriminant(D))) {
        (void)h;
        ClassPoly f = hilbert_class_polynomial(dp);
        out.expanded = poly_mul_z(out.expanded, f.coeffs);
        out.factors.push_back(std::move(f));
    }
    return out;
}

Poly script_p_mod(const mpz_class& D, const FieldPtr& f) {
    ScriptP sp = script_p(D);
    if (sp.kind == ScriptP::Kind::ZERO) return Poly(f);
    return Poly::from_constants(f, sp.expanded);
}

}  // namespace tatefrob
