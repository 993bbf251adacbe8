#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tatefrob/error.hpp"

namespace tatefrob {

// A negative integer D with D ≡ 0 or 1 mod 4 (the discriminant of an order in
// an imaginary quadratic field). Values 0 or ≡ 2,3 mod 4 never become a
// Discriminant; the script-P conventions handle them before reaching here.
class Discriminant {
public:
    explicit Discriminant(mpz_class D);
    const mpz_class& value() const { return d_; }
    bool operator==(const Discriminant& o) const { return d_ == o.d_; }
    bool operator!=(const Discriminant& o) const { return d_ != o.d_; }

private:
    mpz_class d_;
};

// Reduced primitive positive-definite binary quadratic form A·x² + B·xy + C·y²
// of discriminant B² − 4AC = D: |B| ≤ A ≤ C with B ≥ 0 when |B| = A or A = C,
// and gcd(A, B, C) = 1.
struct ReducedForm {
    mpz_class A, B, C;
    bool operator==(const ReducedForm& o) const { return A == o.A && B == o.B && C == o.C; }
    bool operator!=(const ReducedForm& o) const { return !(*this == o); }
};

// Exactly one reduced representative per class of primitive forms of
// discriminant D, ordered by (A, B) ascending. Its length is the class number.
std::vector<ReducedForm> reduced_forms(const Discriminant& D);
unsigned class_number(const Discriminant& D);

// All pairs (h, D') with D = D'·h², h ≥ 1 and D' itself a valid discriminant,
// by ascending h; always contains (1, D).
std::vector<std::pair<mpz_class, Discriminant>> superorders(const Discriminant& D);

// The h ≥ 1 with h² | delta, ascending, for delta ≤ 0. delta = 0 sets `all`
// (every h divides 0) and leaves `values` empty.
struct SquarePartDivisors {
    bool all = false;
    std::vector<mpz_class> values;
};
SquarePartDivisors square_part_divisors(const mpz_class& delta);

}  // namespace tatefrob
