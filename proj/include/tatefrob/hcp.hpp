#pragma once

#include <vector>

#include <gmpxx.h>

#include "tatefrob/bigfloat.hpp"
#include "tatefrob/class_orders.hpp"
#include "tatefrob/finite_field.hpp"

namespace tatefrob {

// Monic integer polynomial whose roots are the j-invariants of the complex
// elliptic curves with CM by the order of discriminant D.
struct ClassPoly {
    Discriminant D;
    std::vector<mpz_class> coeffs;  // ascending; coeffs.back() == 1, degree == class number
};

// j(tau) via the q-expansion (q = e^{2*pi*i*tau}): numerator
// (1 + 240 sum sigma_3(n) q^n)^3, denominator q * prod (1 - q^n)^24 computed
// through the pentagonal-number expansion. Requires Im(tau) >= sqrt(3)/2.
BigComplex j_value(const BigComplex& tau, mpfr_prec_t prec);

// Heuristic bits for exact coefficient recovery of the class polynomial:
// ceil(pi * sqrt(|D|) * sum 1/A / ln 2) + 64 * h_D + floor, where the default
// floor of 256 bits can be overridden via the TATEFROB_PREC_FLOOR env var.
mpfr_prec_t required_precision(const Discriminant& D);

// Exact class polynomial for |D| <= 5*10^4 (CapExceeded beyond). Each
// coefficient must round to an integer with residual < 0.25; on failure the
// precision doubles, with at most 3 retries before PrecisionExhausted.
// The no-argument-precision form is cached per (D, precision floor).
ClassPoly hilbert_class_polynomial(const Discriminant& D);
ClassPoly hilbert_class_polynomial_at(const Discriminant& D, mpfr_prec_t start_prec);

// Product of class polynomials over all orders containing O_D, with the two
// degenerate conventions: D = 0 gives the zero polynomial, D = 2,3 mod 4
// gives the constant 1.
struct ScriptP {
    enum class Kind { ZERO, ONE, PRODUCT };
    Kind kind;
    std::vector<ClassPoly> factors;   // PRODUCT only: one per superorder, ascending h
    std::vector<mpz_class> expanded;  // ZERO -> {}, ONE -> {1}, else the product, ascending
};

ScriptP script_p(const mpz_class& D);  // D <= 0, any residue mod 4

// The mod-p reduction of script_p(D), materialized over an arbitrary field of
// characteristic p (coefficients embedded through the prime subfield).
Poly script_p_mod(const mpz_class& D, const FieldPtr& f);

}  // namespace tatefrob
