#include "tatefrob/frobenius.hpp"

#include <algorithm>

#include "tatefrob/class_orders.hpp"
#include "tatefrob/hcp.hpp"
#include "tatefrob/stats.hpp"

namespace tatefrob {

namespace {

mpz_class pow_ui(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

void check_char_poly(const Mat2& M, const mpz_class& a, const mpz_class& q) {
    if (M[0][0] + M[1][1] != a || M[0][0] * M[1][1] - M[0][1] * M[1][0] != q)
        throw Error(errc::InternalInconsistency, "matrix violates its characteristic polynomial");
    ++stats::char_poly_checks;
}

void require_coprime(const mpz_class& p, unsigned N) {
    if (N < 1) throw Error(errc::BadTorsionLevel, "torsion level must be >= 1");
    mpz_class g;
    mpz_gcd_ui(g.get_mpz_t(), p.get_mpz_t(), N);
    if (g != 1)
        throw Error(errc::BadTorsionLevel, "torsion level shares a factor with the characteristic");
}

}  // namespace

BValue compute_b(const Curve& E) {
    mpz_class delta = E.delta();
    if (delta == 0) return BValue::inf();
    SquarePartDivisors divs = square_part_divisors(delta);
    const FieldPtr& f = E.field();
    FieldElement j = E.j_invariant();
    // try the largest h first; invalid quotient residues reduce to the
    // constant-one polynomial and drop out on their own
    for (auto it = divs.values.rbegin(); it != divs.values.rend(); ++it) {
        mpz_class dprime = delta / (*it * *it);
        if (script_p_mod(dprime, f).eval(j).is_zero()) return BValue::of(*it);
    }
    // h = 1 always qualifies: the curve has complex multiplication by an order
    // whose discriminant divides delta, so some factor vanishes at j
    throw Error(errc::InternalInconsistency,
                "no square divisor of the trace discriminant annihilates j");
}

Mat2 sigma_matrix(const mpz_class& a, const mpz_class& delta, const BValue& b) {
    if (delta == 0) {
        if (!b.infinite || a % 2 != 0)
            throw Error(errc::NonIntegralEntry,
                        "vanishing discriminant needs an even trace and infinite b");
        mpz_class half = a / 2;
        return Mat2{{{half, mpz_class(0)}, {mpz_class(0), half}}};
    }
    if (delta > 0 || b.infinite || b.value <= 0)
        throw Error(errc::NonIntegralEntry, "invalid trace/discriminant/b triple");
    const mpz_class& bv = b.value;
    mpz_class n11 = a * bv - delta;
    mpz_class n12 = delta * (bv * bv - delta);
    mpz_class n22 = a * bv + delta;
    mpz_class d1 = 2 * bv;
    mpz_class d12 = 4 * bv * bv * bv;
    if (n11 % d1 != 0 || n22 % d1 != 0 || n12 % d12 != 0)
        throw Error(errc::NonIntegralEntry, "matrix entries are not integral for this triple");
    return Mat2{{{n11 / d1, n12 / d12}, {bv, n22 / d1}}};
}

UnstableRow classify_unstable(const mpz_class& a, const mpz_class& p, unsigned r) {
    mpz_class q = pow_ui(p, r);
    mpz_class delta = a * a - 4 * q;
    UnstableRow out;
    if (a % p != 0 || delta == 0) return out;  // NOT_UNSTABLE
    if (delta > 0)
        throw Error(errc::NoRowMatch, "positive discriminant is not a Weil polynomial");
    if (a == 0) {
        if (r % 2 == 1) {
            out.row = 1;
            out.m = (r - 1) / 2;
            mpz_class pm = pow_ui(p, out.m);
            out.b_options = {pm, 2 * pm};
            return out;
        }
        if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 1)
            throw Error(errc::NoRowMatch, "trace zero over an even-degree field needs p != 1 mod 4");
        out.row = 2;
        out.m = r / 2;
        out.b_options = {pow_ui(p, out.m)};
        return out;
    }
    if (r % 2 == 0) {
        mpz_class pm = pow_ui(p, r / 2);
        if (a == pm || a == -pm) {
            if (mpz_fdiv_ui(p.get_mpz_t(), 3) == 1)
                throw Error(errc::NoRowMatch, "trace +-p^m needs p != 1 mod 3");
            out.row = 3;
            out.m = r / 2;
            out.b_options = {pm};
            return out;
        }
    } else {
        mpz_class pm1 = pow_ui(p, (r + 1) / 2);
        if ((a == pm1 || a == -pm1) && (p == 2 || p == 3)) {
            out.row = 4;
            out.m = (r - 1) / 2;
            out.b_options = {pow_ui(p, out.m)};
            return out;
        }
    }
    throw Error(errc::NoRowMatch, "divisible-trace Weil polynomial matches no table row");
}

bool is_special(const Curve& E) {
    const mpz_class& p = E.field()->characteristic();
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) != 3) return false;
    if (E.field()->degree() % 2 == 0) return false;
    if (E.trace() != 0) return false;
    return E.j_invariant() == E.field()->from_integer(1728);
}

mpz_class b_via_two_torsion(const Curve& E) {
    const mpz_class& p = E.field()->characteristic();
    unsigned r = E.field()->degree();
    if (p == 2 || r % 2 == 0 || E.trace() != 0)
        throw Error(errc::WrongIsogenyClass,
                    "two-torsion criterion needs trace zero over an odd-degree field of odd "
                    "characteristic");
    mpz_class pm = pow_ui(p, (r - 1) / 2);
    size_t roots = poly_roots(E.division_polynomial(2), E.field()).size();
    return roots == 3 ? 2 * pm : pm;
}

FrobeniusData frobenius_data(const Curve& E) {
    FrobeniusData out;
    out.a = E.trace();
    out.q = E.field()->cardinality();
    out.delta = out.a * out.a - 4 * out.q;
    out.b = compute_b(E);
    out.tau = sigma_matrix(out.a, out.delta, out.b);
    check_char_poly(out.tau, out.a, out.q);

    const mpz_class& p = E.field()->characteristic();
    unsigned r = E.field()->degree();
    if (out.a % p != 0) {
        out.classification = CurveClass::ORDINARY;
        if (out.delta % (out.b.value * out.b.value) != 0)
            throw Error(errc::InternalInconsistency, "b^2 does not divide the discriminant");
        return out;
    }
    if (out.delta == 0) {
        out.classification = CurveClass::SUPERSINGULAR_STABLE;
        return out;
    }
    UnstableRow row = classify_unstable(out.a, p, r);
    out.table_row = row.row;
    if (is_special(E)) {
        out.classification = CurveClass::SPECIAL;
        // record the matrix for the other admissible b as the companion choice
        mpz_class pm = pow_ui(p, row.m);
        mpz_class other = (out.b.value == pm) ? 2 * pm : pm;
        Mat2 alt = sigma_matrix(out.a, out.delta, BValue::of(other));
        check_char_poly(alt, out.a, out.q);
        out.sigma_alt = alt;
        return out;
    }
    out.classification = CurveClass::SUPERSINGULAR_UNSTABLE;
    if (std::find(row.b_options.begin(), row.b_options.end(), out.b.value) == row.b_options.end())
        throw Error(errc::InternalInconsistency, "computed b disagrees with the classified row");
    if (row.row == 1 && p != 2 && out.q <= 1024 && b_via_two_torsion(E) != out.b.value)
        throw Error(errc::InternalInconsistency, "two-torsion criterion disagrees with computed b");
    return out;
}

bool scalar_action(const Curve& E, unsigned N) {
    require_coprime(E.field()->characteristic(), N);
    if (N <= 2 && is_special(E))
        throw Error(errc::SpecialEvenTorsion,
                    "torsion level <= 2 of a special curve is outside the contract");
    mpz_class delta = E.delta();
    mpz_class N2 = mpz_class(N) * N;
    if (delta % N2 != 0) return false;
    return script_p_mod(delta / N2, E.field()).eval(E.j_invariant()).is_zero();
}

bool full_rationality(const Curve& E, unsigned N) {
    if (!scalar_action(E, N)) return false;
    mpz_class nstar = (N % 2) ? mpz_class(N) : mpz_class(2 * N);
    mpz_class lhs = E.trace() - 2 - E.delta() / N;
    return lhs % nstar == 0;
}

}  // namespace tatefrob
