#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tatefrob/error.hpp"

namespace tatefrob {

class FiniteField;
class FieldElement;
class Poly;
using FieldPtr = std::shared_ptr<const FiniteField>;

// F_{p^r} realized as F_p[x]/(m) for a deterministic monic irreducible m.
// Modulus selection: enumerate k = 0, 1, 2, ...; write k in base p as digits
// (c_0, ..., c_{r-1}) and test x^r + c_{r-1}x^{r-1} + ... + c_0 for
// irreducibility; the first hit is the modulus. Prime fields get m = x.
//
// Residues are stored as 64-bit words internally (exact for p < 2^32, the
// documented instantiation cap); every integer that can outgrow a word
// (characteristic, cardinality, counts, encodings) crosses the API as mpz.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
    // Memoized: same (p, r) returns the same field object.
    static FieldPtr make(const mpz_class& p, unsigned r);

    const mpz_class& characteristic() const { return p_; }
    unsigned degree() const { return r_; }
    const mpz_class& cardinality() const { return card_; }
    // Low coefficients c_0..c_{r-1} of the monic modulus x^r + sum c_i x^i.
    std::vector<mpz_class> modulus() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_integer(const mpz_class& n) const;  // constant embedding
    FieldElement generator() const;                       // the class of x
    // Decode the canonical integer encoding sum c_i p^i (0 <= v < p^r).
    FieldElement element_from_value(const mpz_class& v) const;
    // Enumeration helper for small fields (idx < p^r required to fit u64 use).
    FieldElement element_at(uint64_t idx) const;

    bool same_field(const FiniteField& o) const { return this == &o; }

    // Internal word-level views (residues mod p).
    uint64_t pw() const { return pu_; }
    const std::vector<uint64_t>& modulus_words() const { return mod_; }

private:
    FiniteField(mpz_class p, unsigned r, uint64_t pu, std::vector<uint64_t> mod);

    mpz_class p_;
    unsigned r_;
    mpz_class card_;
    uint64_t pu_;
    std::vector<uint64_t> mod_;  // c_0..c_{r-1}

    friend class FieldElement;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr f, std::vector<uint64_t> coeffs);

    const FieldPtr& field() const { return f_; }
    const std::vector<uint64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // Numeric order of the canonical encoding sum c_i p^i.
    bool operator<(const FieldElement& o) const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);

    FieldElement inverse() const;
    FieldElement pow(const mpz_class& e) const;  // e >= 0
    FieldElement square() const { return *this * *this; }

    // Canonical integer encoding sum c_i p^i.
    mpz_class value() const;
    std::string value_string() const { return value().get_str(); }

private:
    FieldPtr f_;
    std::vector<uint64_t> c_;  // length r, entries < p

    friend class FiniteField;
    friend class Poly;
};

// e^q for q = p^s (verified); the s-fold arithmetic Frobenius.
FieldElement frobenius_power(const FieldElement& e, const mpz_class& q);

// Ring homomorphism F_{p^r} -> F_{p^{r*d}} sending the small generator to the
// least root (canonical encoding order) of the small modulus in the big field.
class Embedding {
public:
    // Memoized per (from, to); requires to.degree() % from.degree() == 0.
    static const Embedding& get(const FieldPtr& from, const FieldPtr& to);
    FieldElement operator()(const FieldElement& e) const;
    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }

private:
    Embedding(FieldPtr from, FieldPtr to, std::vector<FieldElement> gen_powers);
    FieldPtr from_, to_;
    std::vector<FieldElement> gen_powers_;  // images of generator^i, i < from.degree()
};

// Univariate polynomial with coefficients in a single field.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}  // zero polynomial
    Poly(FieldPtr f, std::vector<FieldElement> coeffs);

    static Poly from_constants(const FieldPtr& f, const std::vector<mpz_class>& consts);
    static Poly x(const FieldPtr& f);

    const FieldPtr& field() const { return f_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const FieldElement& coeff(size_t i) const;
    FieldElement lead() const;

    bool operator==(const Poly& o) const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const FieldElement& s) const;

    Poly monic() const;
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    Poly mod(const Poly& m) const;
    Poly mulmod(const Poly& o, const Poly& m) const;
    Poly powmod(const mpz_class& e, const Poly& m) const;
    static Poly gcd(Poly a, Poly b);  // monic gcd

    FieldElement eval(const FieldElement& at) const;
    // Coefficient-wise embedding into an extension.
    Poly embedded(const FieldPtr& ext) const;

private:
    void trim();
    FieldPtr f_;
    std::vector<FieldElement> c_;  // c_[i] multiplies x^i; trimmed
};

// All roots of f in ext (multiplicity collapsed), sorted by canonical
// encoding. Exhaustive scan for |ext| <= 10^4, otherwise gcd with x^|ext| - x
// followed by equal-degree splitting into linear factors.
std::vector<FieldElement> poly_roots(const Poly& f, const FieldPtr& ext);

// Deterministic multiplicative utilities (iterate elements in encoding order).
FieldElement multiplicative_generator(const FieldPtr& f);
FieldElement least_nonsquare(const FieldPtr& f);  // odd characteristic only
// Solutions y of y^2 + c*y = d (0, 1, or 2 of them), any characteristic.
std::vector<FieldElement> solve_quadratic_y(const FieldElement& c, const FieldElement& d);
// Square root in odd characteristic (nullopt if e is a non-residue); in
// characteristic 2 the unique root always exists.
std::optional<FieldElement> sqrt_in_field(const FieldElement& e);
// Absolute trace to F_2 of an element of F_{2^n}, returned as 0 or 1.
int absolute_trace_char2(const FieldElement& e);

}  // namespace tatefrob
