#include "tatefrob/reciprocity.hpp"

#include "tatefrob/hcp.hpp"

namespace tatefrob {

namespace {

std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace

RationalCurve::RationalCurve(mpz_class a_, mpz_class b_) : a(std::move(a_)), b(std::move(b_)) {
    if (disc() == 0)
        throw Error(errc::Singular, "rational model has vanishing discriminant");
}

mpz_class RationalCurve::disc() const { return -16 * (4 * a * a * a + 27 * b * b); }

Curve reduce_at(const RationalCurve& E, unsigned long p) {
    if (p <= 3) throw Error(errc::BadReductionPrime, "reduction requires p > 3");
    FieldPtr f = FiniteField::make(p, 1);  // rejects composite p
    if (mpz_divisible_ui_p(E.disc().get_mpz_t(), p))
        throw Error(errc::BadReductionPrime, "prime divides the model discriminant");
    return Curve::short_model(f, f->from_integer(E.a), f->from_integer(E.b));
}

SplitConditions splits_completely(const RationalCurve& E, unsigned long p, unsigned N) {
    if (N < 1) throw Error(errc::BadTorsionLevel, "level must be >= 1");
    if (p != 0 && N % p == 0)
        throw Error(errc::BadReductionPrime, "prime divides the level");
    Curve Ep = reduce_at(E, p);
    if (N == 2 && is_special(Ep))
        throw Error(errc::SpecialN2Exclusion,
                    "level 2 is excluded for trace-zero reductions with j = 1728");

    const mpz_class a_p = Ep.trace();
    const mpz_class delta_p = Ep.delta();

    SplitConditions out;
    // (i) N^2 divides the local discriminant and the class-polynomial product
    //     of the quotient vanishes at j mod p
    mpz_class n2 = mpz_class(N) * N;
    if (delta_p % n2 == 0) {
        Poly pbar = script_p_mod(delta_p / n2, Ep.field());
        out.cond_i = pbar.eval(Ep.j_invariant()).is_zero();
    }
    // (ii) a_p = 2 + delta_p / N modulo N (odd N) or 2N (even N)
    if (delta_p % N == 0) {
        mpz_class nstar = (N % 2 == 0) ? mpz_class(2 * N) : mpz_class(N);
        out.cond_ii = (a_p - 2 - delta_p / N) % nstar == 0;
    }
    out.splits = out.cond_i && out.cond_ii;
    return out;
}

SplitReport survey(const RationalCurve& E, unsigned N, unsigned long p_max, bool cross_check) {
    if (N < 1) throw Error(errc::BadTorsionLevel, "level must be >= 1");
    if (p_max > 10000) throw Error(errc::CapExceeded, "survey cap is p_max <= 10^4");

    SplitReport rep;
    rep.N = N;
    for (unsigned long p : primes_up_to(p_max)) {
        try {
            SplitConditions c = splits_completely(E, p, N);
            SplitRow row;
            row.p = p;
            row.splits = c.splits;
            row.cond_i = c.cond_i;
            row.cond_ii = c.cond_ii;
            if (cross_check) {
                TorsionMatrix m = frobenius_on_torsion(reduce_at(E, p), N);
                unsigned one = 1 % N;
                row.cross_check = m.entries[0][0] == one && m.entries[0][1] == 0 &&
                                  m.entries[1][0] == 0 && m.entries[1][1] == one;
            }
            rep.rows.push_back(std::move(row));
        } catch (const Error& e) {
            rep.skipped.push_back({p, e.code()});
        }
    }
    return rep;
}

}  // namespace tatefrob
