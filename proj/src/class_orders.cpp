#include "tatefrob/class_orders.hpp"

#include <algorithm>

namespace tatefrob {

namespace {

// Nonnegative residue of v mod 4.
unsigned long mod4(const mpz_class& v) { return mpz_fdiv_ui(v.get_mpz_t(), 4); }

mpz_class gcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

}  // namespace

Discriminant::Discriminant(mpz_class D) : d_(std::move(D)) {
    if (d_ >= 0 || (mod4(d_) != 0 && mod4(d_) != 1))
        throw Error(errc::BadDiscriminant,
                    "not a negative discriminant (need D < 0, D = 0 or 1 mod 4): " + d_.get_str());
}

std::vector<ReducedForm> reduced_forms(const Discriminant& D) {
    const mpz_class& d = D.value();
    const mpz_class absd = -d;
    std::vector<ReducedForm> out;
    // A ≤ sqrt(|D|/3) <=> 3A² ≤ |D|; B runs over |B| ≤ A with B ≡ D mod 2.
    for (mpz_class A = 1; 3 * A * A <= absd; ++A) {
        for (mpz_class B = -A; B <= A; ++B) {
            if (mod4(B * B - d) % 2 != 0) continue;  // parity: B² ≡ D mod 2
            mpz_class num = B * B - d;               // = 4AC > 0
            mpz_class fourA = 4 * A;
            if (num % fourA != 0) continue;
            mpz_class C = num / fourA;
            if (C < A) continue;
            if (B < 0 && (-B == A || A == C)) continue;  // boundary classes keep B ≥ 0
            if (gcd3(A, B, C) != 1) continue;
            out.push_back(ReducedForm{A, B, C});
        }
    }
    // enumeration order is already (A, B) ascending
    return out;
}

unsigned class_number(const Discriminant& D) {
    return static_cast<unsigned>(reduced_forms(D).size());
}

SquarePartDivisors square_part_divisors(const mpz_class& delta) {
    if (delta > 0) throw Error(errc::BadDiscriminant, "square-part scan needs delta <= 0");
    SquarePartDivisors res;
    if (delta == 0) {
        res.all = true;
        return res;
    }
    mpz_class n = -delta;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 62)
        throw Error(errc::TooLarge, "square-part scan cap is 2^62");
    unsigned long long m = n.get_ui();
    // square part: product of q^{floor(e/2)} over prime powers q^e || m
    std::vector<std::pair<unsigned long long, unsigned>> sq;
    for (unsigned long long q = 2; q * q <= m; ++q) {
        if (m % q) continue;
        unsigned e = 0;
        while (m % q == 0) {
            m /= q;
            ++e;
        }
        if (e / 2 > 0) sq.emplace_back(q, e / 2);
    }
    std::vector<unsigned long long> hs{1};
    for (auto [q, e] : sq) {
        size_t base = hs.size();
        unsigned long long pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= q;
            for (size_t j = 0; j < base; ++j) hs.push_back(hs[j] * pw);
        }
    }
    std::sort(hs.begin(), hs.end());
    for (unsigned long long h : hs) res.values.emplace_back(static_cast<unsigned long>(h));
    return res;
}

std::vector<std::pair<mpz_class, Discriminant>> superorders(const Discriminant& D) {
    std::vector<std::pair<mpz_class, Discriminant>> out;
    SquarePartDivisors hs = square_part_divisors(D.value());
    for (const mpz_class& h : hs.values) {
        mpz_class dp = D.value() / (h * h);
        if (mod4(dp) == 0 || mod4(dp) == 1) out.emplace_back(h, Discriminant(dp));
    }
    return out;
}

}  // namespace tatefrob
