#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tatefrob/curves.hpp"

namespace tatefrob {

// 2x2 integer matrix, row-major
using Mat2 = std::array<std::array<mpz_class, 2>, 2>;

enum class CurveClass { ORDINARY, SUPERSINGULAR_STABLE, SUPERSINGULAR_UNSTABLE, SPECIAL };

// a positive integer or the infinite marker used when the discriminant vanishes
struct BValue {
    bool infinite = false;
    mpz_class value;  // meaningful iff !infinite
    static BValue inf() { return BValue{true, mpz_class(0)}; }
    static BValue of(mpz_class v) { return BValue{false, std::move(v)}; }
    bool operator==(const BValue& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

// classification of a trace-divisible Weil polynomial with negative discriminant
struct UnstableRow {
    int row = 0;                       // 0 = NOT_UNSTABLE
    unsigned m = 0;                    // the exponent parameter of the matched row
    std::vector<mpz_class> b_options;  // admissible b values, ascending
};

struct FrobeniusData {
    mpz_class a;      // trace of Frobenius
    mpz_class delta;  // a^2 - 4q
    mpz_class q;
    BValue b;
    Mat2 tau;  // the scalar matrix when delta = 0
    CurveClass classification = CurveClass::ORDINARY;
    int table_row = 0;              // 1..4 for supersingular curves with delta < 0
    std::optional<Mat2> sigma_alt;  // the companion matrix choice for special curves
};

// largest h with h^2 | delta whose reduced class polynomial kills j; INFINITE
// when delta = 0
BValue compute_b(const Curve& E);

// the explicit Frobenius matrix for the triple (a, delta, b); the scalar
// matrix diag(a/2, a/2) when delta = 0
Mat2 sigma_matrix(const mpz_class& a, const mpz_class& delta, const BValue& b);

// match (a, p, r) against the classification table of trace-divisible Weil
// polynomials; row 0 when the input is ordinary or has delta = 0
UnstableRow classify_unstable(const mpz_class& a, const mpz_class& p, unsigned r);

// p = 3 mod 4, odd-degree field, trace zero, j = 1728
bool is_special(const Curve& E);

// for trace-zero curves over odd-degree fields of odd characteristic:
// 2p^m when the two-torsion is fully rational, p^m otherwise
mpz_class b_via_two_torsion(const Curve& E);

FrobeniusData frobenius_data(const Curve& E);

// Frobenius acts on E[N] as a scalar
bool scalar_action(const Curve& E, unsigned N);

// E[N] is entirely rational over the base field
bool full_rationality(const Curve& E, unsigned N);

}  // namespace tatefrob
