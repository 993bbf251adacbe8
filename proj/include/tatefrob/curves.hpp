#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tatefrob/finite_field.hpp"

namespace tatefrob {

// Affine rational point or the point at infinity.
struct Point {
    bool infinity = true;
    FieldElement x, y;

    static Point at_infinity() { return {}; }
    static Point affine(FieldElement px, FieldElement py) {
        Point p;
        p.infinity = false;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
    bool operator==(const Point& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

struct WeilData {
    mpz_class a;                      // trace of Frobenius
    mpz_class delta;                  // a^2 - 4q, always <= 0
    std::array<mpz_class, 3> f;       // x^2 - a x + q, ascending: {q, -a, 1}
};

class Curve;

// Minimal field with full N-torsion, the curve base-changed there, and an
// explicit pair generating E[N] = (Z/N)^2.
struct TorsionBasis;

// Elliptic curve in general Weierstrass form
//   y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
// over any finite field (the short form fills a1 = a2 = a3 = 0). Immutable;
// the point count and division polynomials are cached behind a lock.
class Curve {
public:
    static Curve short_model(const FieldPtr& f, const FieldElement& a4, const FieldElement& a6);
    static Curve general_model(const FieldPtr& f, const FieldElement& a1, const FieldElement& a2,
                               const FieldElement& a3, const FieldElement& a4, const FieldElement& a6);

    const FieldPtr& field() const { return f_; }
    const FieldElement& a1() const { return a1_; }
    const FieldElement& a2() const { return a2_; }
    const FieldElement& a3() const { return a3_; }
    const FieldElement& a4() const { return a4_; }
    const FieldElement& a6() const { return a6_; }
    bool is_short() const { return a1_.is_zero() && a2_.is_zero() && a3_.is_zero(); }

    // b-invariants of the model and the curve discriminant (nonzero).
    FieldElement b2() const;
    FieldElement b4() const;
    FieldElement b6() const;
    FieldElement b8() const;
    FieldElement disc() const;
    FieldElement j_invariant() const;

    bool on_curve(const Point& p) const;
    Point neg(const Point& p) const;
    Point add(const Point& p, const Point& q) const;
    Point mul(const mpz_class& n, const Point& p) const;

    // the same equation with coefficients pushed through the canonical embedding
    Curve base_change(const FieldPtr& ext) const;
    // a quadratic twist (|E| + |E^tw| = 2q + 2)
    Curve quadratic_twist() const;

    // exact |E(k)|: exhaustive x-sweep for q <= 2^16, baby-step/giant-step with
    // a twist fallback up to the 2^24 cap; Hasse is asserted on every count.
    mpz_class count_points() const;
    mpz_class trace() const;   // a_E = q + 1 - |E(k)|
    mpz_class delta() const;   // a_E^2 - 4q
    WeilData weil() const;

    // x-part of the N-division polynomial (gcd(N, p) = 1): for odd N this is
    // psi_N itself, a polynomial in x of degree (N^2-1)/2; for even N it is
    // (psi_N / psi_2) * psi_2^2, i.e. the x-part of psi_N times the cubic
    // S = 4x^3 + b2 x^2 + 2 b4 x + b6, so that in both cases the roots are
    // exactly the x-coordinates of the nonzero N-torsion.
    Poly division_polynomial(unsigned N) const;

    // the points of this curve above a given x-coordinate (0, 1 or 2)
    std::vector<Point> lifts(const FieldElement& x) const;

    TorsionBasis torsion_basis(unsigned N) const;

private:
    Curve(FieldPtr f, FieldElement a1, FieldElement a2, FieldElement a3, FieldElement a4,
          FieldElement a6);

    mpz_class count_small() const;  // exhaustive sweep, q <= 2^16
    mpz_class count_bsgs() const;   // 2^16 < q <= 2^24

    FieldPtr f_;
    FieldElement a1_, a2_, a3_, a4_, a6_;

    struct Cache {
        std::mutex mu;
        std::optional<mpz_class> count;
        std::map<unsigned, Poly> divpoly;  // x-part sequence by index
    };
    std::shared_ptr<Cache> cache_;
};

struct TorsionBasis {
    FieldPtr ext;     // minimal field containing E[N]
    unsigned degree;  // [ext : base field]
    Curve curve;      // base-changed model over ext
    Point P, Q;       // generators of E[N]
};

// order of GL2(Z/N), the search cap for torsion field degrees
mpz_class gl2_order(unsigned N);

}  // namespace tatefrob
