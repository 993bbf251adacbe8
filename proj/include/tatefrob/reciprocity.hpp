#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tatefrob/oracle.hpp"

namespace tatefrob {

// Rational elliptic curve y^2 = x^3 + a x + b with nonzero discriminant,
// reduced at good primes p > 3.
struct RationalCurve {
    mpz_class a, b;

    RationalCurve(mpz_class a_, mpz_class b_);
    mpz_class disc() const;  // -16 (4 a^3 + 27 b^2)
};

// Verdict of the splitting criterion at one good prime: condition (i) is the
// square-divisibility of the local discriminant together with the vanishing
// of the associated class-polynomial product at j mod p; condition (ii) is
// the trace congruence. The prime splits completely in the N-torsion field
// exactly when both hold.
struct SplitConditions {
    bool splits = false;
    bool cond_i = false;
    bool cond_ii = false;
};

struct SplitRow {
    unsigned long p = 0;
    bool splits = false;
    bool cond_i = false;
    bool cond_ii = false;
    std::optional<bool> cross_check;  // brute-force Frobenius is the identity
};

struct SkippedPrime {
    unsigned long p = 0;
    std::string reason;  // stable error code
};

struct SplitReport {
    unsigned N = 0;
    std::vector<SplitRow> rows;        // ascending by p
    std::vector<SkippedPrime> skipped; // ascending by p
};

// reduction mod p (p > 3, p coprime to the discriminant)
Curve reduce_at(const RationalCurve& E, unsigned long p);

// splitting criterion at a single prime (p coprime to N and to the
// discriminant; level 2 is excluded when the reduction is trace-zero with
// j = 1728)
SplitConditions splits_completely(const RationalCurve& E, unsigned long p, unsigned N);

// every prime <= p_max (cap 10^4) gets either a data row or a skipped row;
// cross_check additionally compares against the brute-force Frobenius matrix
SplitReport survey(const RationalCurve& E, unsigned N, unsigned long p_max, bool cross_check);

}  // namespace tatefrob
