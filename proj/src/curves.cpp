#include "tatefrob/curves.hpp"

#include <algorithm>
#include <unordered_map>

#include "tatefrob/stats.hpp"

namespace tatefrob {

namespace {

using u64 = uint64_t;

// deterministic stream for baby-step/giant-step sampling
struct Rng {
    u64 s;
    explicit Rng(u64 seed) : s(seed) {}
    u64 next() {
        s += 0x9e3779b97f4a7c15ULL;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

u64 enc(const FieldElement& e) {
    const u64 p = e.field()->pw();
    u64 v = 0;
    const auto& c = e.coeffs();
    for (size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

u64 point_key(const Point& pt) {
    if (pt.infinity) return ~0ULL;
    return enc(pt.x) * pt.x.field()->cardinality().get_ui() + enc(pt.y);
}

constexpr u64 kSweepCap = 1u << 16;
constexpr u64 kCountCap = 1u << 24;

}  // namespace

Curve::Curve(FieldPtr f, FieldElement a1, FieldElement a2, FieldElement a3, FieldElement a4,
             FieldElement a6)
    : f_(std::move(f)),
      a1_(std::move(a1)),
      a2_(std::move(a2)),
      a3_(std::move(a3)),
      a4_(std::move(a4)),
      a6_(std::move(a6)),
      cache_(std::make_shared<Cache>()) {
    if (disc().is_zero()) throw Error(errc::Singular, "Weierstrass equation is singular");
}

Curve Curve::short_model(const FieldPtr& f, const FieldElement& a4, const FieldElement& a6) {
    return Curve(f, f->zero(), f->zero(), f->zero(), a4, a6);
}

Curve Curve::general_model(const FieldPtr& f, const FieldElement& a1, const FieldElement& a2,
                           const FieldElement& a3, const FieldElement& a4, const FieldElement& a6) {
    return Curve(f, a1, a2, a3, a4, a6);
}

FieldElement Curve::b2() const { return a1_ * a1_ + f_->from_integer(4) * a2_; }
FieldElement Curve::b4() const { return f_->from_integer(2) * a4_ + a1_ * a3_; }
FieldElement Curve::b6() const { return a3_ * a3_ + f_->from_integer(4) * a6_; }
FieldElement Curve::b8() const {
    return a1_ * a1_ * a6_ + f_->from_integer(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ -
           a4_ * a4_;
}

FieldElement Curve::disc() const {
    FieldElement B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - f_->from_integer(8) * B4 * B4 * B4 - f_->from_integer(27) * B6 * B6 +
           f_->from_integer(9) * B2 * B4 * B6;
}

FieldElement Curve::j_invariant() const {
    FieldElement B2 = b2(), B4 = b4();
    FieldElement c4 = B2 * B2 - f_->from_integer(24) * B4;
    return c4 * c4 * c4 / disc();
}

bool Curve::on_curve(const Point& p) const {
    if (p.infinity) return true;
    FieldElement lhs = p.y * p.y + a1_ * p.x * p.y + a3_ * p.y;
    FieldElement rhs = ((p.x + a2_) * p.x + a4_) * p.x + a6_;
    return lhs == rhs;
}

Point Curve::neg(const Point& p) const {
    if (p.infinity) return p;
    return Point::affine(p.x, -p.y - a1_ * p.x - a3_);
}

Point Curve::add(const Point& p, const Point& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    FieldElement lambda;
    if (p.x == q.x) {
        if (q.y == (-p.y - a1_ * p.x - a3_)) return Point::at_infinity();  // q == -p
        // doubling; the tangent denominator is nonzero because p != -p
        FieldElement den = f_->from_integer(2) * p.y + a1_ * p.x + a3_;
        FieldElement num = f_->from_integer(3) * p.x * p.x + f_->from_integer(2) * a2_ * p.x + a4_ -
                           a1_ * p.y;
        lambda = num / den;
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    FieldElement nu = p.y - lambda * p.x;
    FieldElement x3 = lambda * lambda + a1_ * lambda - a2_ - p.x - q.x;
    FieldElement y3 = -(lambda + a1_) * x3 - nu - a3_;
    return Point::affine(x3, y3);
}

Point Curve::mul(const mpz_class& n, const Point& p) const {
    if (n < 0) return neg(mul(-n, p));
    Point acc = Point::at_infinity();
    if (n == 0 || p.infinity) return acc;
    size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = add(acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), i)) acc = add(acc, p);
    }
    return acc;
}

Curve Curve::base_change(const FieldPtr& ext) const {
    if (ext.get() == f_.get()) return *this;
    const Embedding& e = Embedding::get(f_, ext);
    return Curve(ext, e(a1_), e(a2_), e(a3_), e(a4_), e(a6_));
}

Curve Curve::quadratic_twist() const {
    const mpz_class& p = f_->characteristic();
    if (p == 2) {
        // shift by an element of absolute trace 1: the twist cocycle
        const u64 q = f_->cardinality().get_ui();
        for (u64 i = 1; i < q; ++i) {
            FieldElement z = f_->element_at(i);
            if (absolute_trace_char2(z) == 1)
                return Curve(f_, a1_, a2_ + z * a1_ * a1_, a3_, a4_, a6_ + z * a3_ * a3_);
        }
        throw Error(errc::InternalInconsistency, "no trace-one element found");
    }
    FieldElement u = least_nonsquare(f_);
    if (p == 3) {
        // normalize to a1 = a3 = 0 by completing the square, then scale
        FieldElement A2 = b2() / f_->from_integer(4);
        FieldElement A4 = b4() / f_->from_integer(2);
        FieldElement A6 = b6() / f_->from_integer(4);
        return Curve(f_, f_->zero(), u * A2, f_->zero(), u * u * A4, u * u * u * A6);
    }
    // char > 3: reduce to y^2 = x^3 - 27 c4 x - 54 c6 and scale by u
    FieldElement B2 = b2(), B4 = b4(), B6 = b6();
    FieldElement c4 = B2 * B2 - f_->from_integer(24) * B4;
    FieldElement c6 = -(B2 * B2 * B2) + f_->from_integer(36) * B2 * B4 - f_->from_integer(216) * B6;
    FieldElement A = f_->from_integer(-27) * c4 * u * u;
    FieldElement B = f_->from_integer(-54) * c6 * u * u * u;
    return short_model(f_, A, B);
}

std::vector<Point> Curve::lifts(const FieldElement& x) const {
    FieldElement c = a1_ * x + a3_;
    FieldElement d = ((x + a2_) * x + a4_) * x + a6_;
    std::vector<FieldElement> ys = solve_quadratic_y(c, d);
    std::sort(ys.begin(), ys.end());
    std::vector<Point> out;
    out.reserve(ys.size());
    for (auto& y : ys) out.push_back(Point::affine(x, std::move(y)));
    return out;
}

mpz_class Curve::count_small() const {
    const u64 q = f_->cardinality().get_ui();
    u64 total = 1;  // the point at infinity
    if (f_->characteristic() == 2) {
        for (u64 i = 0; i < q; ++i) {
            FieldElement x = f_->element_at(i);
            FieldElement c = a1_ * x + a3_;
            FieldElement d = ((x + a2_) * x + a4_) * x + a6_;
            if (c.is_zero())
                total += 1;  // y^2 = d always has exactly one root
            else
                total += (absolute_trace_char2(d * (c * c).inverse()) == 0) ? 2 : 0;
        }
        return mpz_class(static_cast<unsigned long>(total));
    }
    // odd characteristic: complete the square, then count quadratic characters
    // of g(x) = x^3 + a2 x^2 + a4 x + a6 + ((a1 x + a3)/2)^2 via a squares table
    std::vector<bool> is_square(q, false);
    for (u64 i = 0; i < q; ++i) {
        FieldElement e = f_->element_at(i);
        is_square[enc(e * e)] = true;
    }
    FieldElement half = f_->from_integer(2).inverse();
    for (u64 i = 0; i < q; ++i) {
        FieldElement x = f_->element_at(i);
        FieldElement hc = (a1_ * x + a3_) * half;
        FieldElement g = ((x + a2_) * x + a4_) * x + a6_ + hc * hc;
        if (g.is_zero())
            total += 1;
        else
            total += is_square[enc(g)] ? 2 : 0;
    }
    return mpz_class(static_cast<unsigned long>(total));
}

namespace {

// all m in [lo, hi] with m*P = O, by baby-step/giant-step
std::vector<mpz_class> annihilators(const Curve& E, const Point& P, const mpz_class& lo,
                                    const mpz_class& hi) {
    u64 width = mpz_class(hi - lo + 1).get_ui();
    u64 s = 1;
    while (s * s < width) ++s;
    std::unordered_multimap<u64, u64> baby;  // key(-jP) -> j
    Point jp = Point::at_infinity();
    for (u64 j = 0; j < s; ++j) {
        baby.emplace(point_key(E.neg(jp)), j);
        jp = E.add(jp, P);
    }
    Point stride = jp;             // s*P
    Point giant = E.mul(lo, P);    // (lo + i*s)*P
    std::vector<mpz_class> out;
    for (u64 i = 0; lo + static_cast<long>(i) * static_cast<long>(s) <= hi; ++i) {
        auto [begin, end] = baby.equal_range(point_key(giant));
        for (auto it = begin; it != end; ++it) {
            mpz_class m = lo + mpz_class(static_cast<unsigned long>(i)) * s + it->second;
            if (m >= lo && m <= hi && E.mul(m, P).infinity) out.push_back(m);
        }
        giant = E.add(giant, stride);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// a deterministic stream of rational points (may be empty only for tiny q)
Point sample_point(const Curve& E, Rng& rng) {
    const u64 q = E.field()->cardinality().get_ui();
    for (int tries = 0; tries < 4096; ++tries) {
        FieldElement x = E.field()->element_at(rng.next() % q);
        auto ls = E.lifts(x);
        if (!ls.empty()) return ls[rng.next() % ls.size()];
    }
    throw Error(errc::InternalInconsistency, "failed to sample a rational point");
}

std::vector<mpz_class> bsgs_candidates(const Curve& E, int max_samples, Rng& rng) {
    const mpz_class q = E.field()->cardinality();
    mpz_class four_q = 4 * q, root;
    mpz_sqrt(root.get_mpz_t(), four_q.get_mpz_t());
    mpz_class lo = q + 1 - root, hi = q + 1 + root;
    std::vector<mpz_class> cand;
    for (int k = 0; k < max_samples; ++k) {
        Point P = sample_point(E, rng);
        std::vector<mpz_class> ann = annihilators(E, P, lo, hi);
        if (ann.empty())
            throw Error(errc::InternalInconsistency, "no group-order candidate for a rational point");
        if (k == 0) {
            cand = std::move(ann);
        } else {
            std::vector<mpz_class> merged;
            std::set_intersection(cand.begin(), cand.end(), ann.begin(), ann.end(),
                                  std::back_inserter(merged));
            cand = std::move(merged);
        }
        if (cand.size() <= 1) break;
    }
    if (cand.empty())
        throw Error(errc::InternalInconsistency, "group-order candidate sets have empty intersection");
    return cand;
}

}  // namespace

mpz_class Curve::count_bsgs() const {
    u64 seed = 0x6a09e667f3bcc908ULL;
    for (const FieldElement* e : {&a1_, &a2_, &a3_, &a4_, &a6_})
        for (u64 w : e->coeffs()) seed = seed * 0x100000001b3ULL + w + 1;
    seed += f_->cardinality().get_ui();
    Rng rng(seed);

    std::vector<mpz_class> cand = bsgs_candidates(*this, 10, rng);
    if (cand.size() == 1) return cand[0];
    // ambiguous: resolve through the quadratic twist, |E| + |E^tw| = 2q + 2
    Curve tw = quadratic_twist();
    std::vector<mpz_class> twc = bsgs_candidates(tw, 10, rng);
    const mpz_class target = 2 * f_->cardinality() + 2;
    std::vector<mpz_class> fits;
    for (const mpz_class& c : cand)
        if (std::binary_search(twc.begin(), twc.end(), target - c)) fits.push_back(c);
    if (fits.size() != 1)
        throw Error(errc::InternalInconsistency, "twist resolution left the point count ambiguous");
    return fits[0];
}

mpz_class Curve::count_points() const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        if (cache_->count) return *cache_->count;
    }
    const mpz_class& card = f_->cardinality();
    if (card > kCountCap) throw Error(errc::TooLarge, "point counting cap is 2^24");
    mpz_class n = (card <= kSweepCap) ? count_small() : count_bsgs();
    // Hasse bound check on every count
    mpz_class a = card + 1 - n;
    if (a * a > 4 * card)
        throw Error(errc::InternalInconsistency, "point count violates the Hasse bound");
    ++stats::hasse_checks;
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->count = n;
    return n;
}

mpz_class Curve::trace() const { return f_->cardinality() + 1 - count_points(); }

mpz_class Curve::delta() const {
    mpz_class a = trace();
    return a * a - 4 * f_->cardinality();
}

WeilData Curve::weil() const {
    WeilData w;
    w.a = trace();
    w.delta = w.a * w.a - 4 * f_->cardinality();
    w.f = {f_->cardinality(), -w.a, mpz_class(1)};
    return w;
}

Poly Curve::division_polynomial(unsigned N) const {
    if (N < 1) throw Error(errc::BadTorsionLevel, "torsion level must be >= 1");
    {
        mpz_class g;
        mpz_gcd_ui(g.get_mpz_t(), f_->characteristic().get_mpz_t(), N);
        if (g != 1) throw Error(errc::BadTorsionLevel, "torsion level shares a factor with the characteristic");
    }
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->divpoly.find(N);
        if (it != cache_->divpoly.end()) return it->second;
    }
    FieldElement B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    auto ci = [&](long v) { return f_->from_integer(mpz_class(v)); };
    // S = psi_2^2 as a polynomial in x
    Poly S(f_, {B6, ci(2) * B4, B2, ci(4)});
    // x-part sequence: psi_n = p[n] for odd n, psi_n = p[n] * psi_2 for even n
    std::vector<Poly> p(std::max(N + 1, 5u), Poly(f_));
    p[0] = Poly(f_);
    p[1] = Poly::from_constants(f_, {1});
    p[2] = Poly::from_constants(f_, {1});
    p[3] = Poly(f_, {B8, ci(3) * B6, ci(3) * B4, B2, ci(3)});
    p[4] = Poly(f_, {B4 * B8 - B6 * B6, B2 * B8 - B4 * B6, ci(10) * B8, ci(10) * B6, ci(5) * B4, B2,
                     ci(2)});
    Poly S2 = S * S;
    for (unsigned n = 5; n <= N; ++n) {
        unsigned m = n / 2;
        if (n % 2 == 0) {
            p[n] = p[m] * (p[m + 2] * (p[m - 1] * p[m - 1]) - p[m - 2] * (p[m + 1] * p[m + 1]));
        } else if (m % 2 == 0) {
            p[n] = p[m + 2] * (p[m] * p[m] * p[m]) * S2 - p[m - 1] * (p[m + 1] * p[m + 1] * p[m + 1]);
        } else {
            p[n] = p[m + 2] * (p[m] * p[m] * p[m]) - p[m - 1] * (p[m + 1] * p[m + 1] * p[m + 1]) * S2;
        }
    }
    Poly result = (N % 2 == 0) ? p[N] * S : p[N];
    std::lock_guard<std::mutex> lk(cache_->mu);
    return cache_->divpoly.emplace(N, std::move(result)).first->second;
}

mpz_class gl2_order(unsigned N) {
    mpz_class g = 1;
    unsigned n = N;
    for (unsigned ell = 2; ell * ell <= n; ++ell) {
        if (n % ell) continue;
        unsigned k = 0;
        while (n % ell == 0) {
            n /= ell;
            ++k;
        }
        mpz_class l(ell), lk1;
        mpz_pow_ui(lk1.get_mpz_t(), l.get_mpz_t(), 4 * (k - 1));
        g *= lk1 * (l * l - 1) * (l * l - l);
    }
    if (n > 1) {
        mpz_class l(n);
        g *= (l * l - 1) * (l * l - l);
    }
    return g;
}

TorsionBasis Curve::torsion_basis(unsigned N) const {
    if (N < 1) throw Error(errc::BadTorsionLevel, "torsion level must be >= 1");
    if (N > 16) throw Error(errc::CapExceeded, "torsion level cap is 16");
    {
        mpz_class g;
        mpz_gcd_ui(g.get_mpz_t(), f_->characteristic().get_mpz_t(), N);
        if (g != 1) throw Error(errc::BadTorsionLevel, "torsion level shares a factor with the characteristic");
    }
    if (N == 1) return TorsionBasis{f_, 1, *this, Point::at_infinity(), Point::at_infinity()};

    const mpz_class q = f_->cardinality();
    const mpz_class a = trace();
    const mpz_class cap = gl2_order(N);

    // prime divisors of N for exact-order checks
    std::vector<unsigned> primes;
    for (unsigned ell = 2, n = N; ell <= n; ++ell)
        if (n % ell == 0) {
            primes.push_back(ell);
            while (n % ell == 0) n /= ell;
        }

    Poly divpol = division_polynomial(N);
    mpz_class a_prev = 2, a_cur = a, q_pow = 1;
    for (mpz_class d = 1; d <= cap; ++d) {
        q_pow *= q;  // q^d
        // trace of Frobenius^d via a_d = a * a_{d-1} - q * a_{d-2}
        if (d > 1) {
            mpz_class nxt = a * a_cur - q * a_prev;
            a_prev = a_cur;
            a_cur = nxt;
        }
        // cheap necessary conditions for E[N] inside E(F_{q^d}):
        // N^2 divides the group order, and mu_N lives in the field
        mpz_class order = q_pow + 1 - a_cur;
        if (order % (N * N) != 0) continue;
        if ((q_pow - 1) % N != 0) continue;

        unsigned du = static_cast<unsigned>(d.get_ui());
        unsigned long total_deg = static_cast<unsigned long>(f_->degree()) * du;
        if (total_deg > 4096) throw Error(errc::CapExceeded, "torsion field degree exceeds the instantiation cap");
        FieldPtr ext = FiniteField::make(f_->characteristic(), static_cast<unsigned>(total_deg));
        Curve Ee = base_change(ext);

        // honest verification: every N-torsion x-coordinate in ext, with lifts
        std::vector<Point> torsion;
        for (const FieldElement& root : poly_roots(divpol, ext))
            for (Point& pt : Ee.lifts(root)) torsion.push_back(std::move(pt));
        if (torsion.size() + 1 != static_cast<size_t>(N) * N) continue;

        // pick generators: first point of exact order N, then the first
        // companion making all N^2 combinations distinct
        auto order_is_N = [&](const Point& pt) {
            if (!Ee.mul(N, pt).infinity) return false;
            for (unsigned ell : primes)
                if (Ee.mul(N / ell, pt).infinity) return false;
            return true;
        };
        for (size_t ip = 0; ip < torsion.size(); ++ip) {
            if (!order_is_N(torsion[ip])) continue;
            const Point& P = torsion[ip];
            for (size_t iq = 0; iq < torsion.size(); ++iq) {
                if (iq == ip || !order_is_N(torsion[iq])) continue;
                const Point& Q = torsion[iq];
                // enumerate all N^2 combinations i*P + j*Q; keys are exact
                // coefficient vectors (the affine ones have size 2*degree,
                // so the empty infinity key cannot collide)
                auto exact_key = [](const Point& pt) {
                    if (pt.infinity) return std::vector<u64>{};
                    std::vector<u64> k = pt.x.coeffs();
                    k.insert(k.end(), pt.y.coeffs().begin(), pt.y.coeffs().end());
                    return k;
                };
                std::vector<std::vector<u64>> combos;
                combos.reserve(static_cast<size_t>(N) * N);
                Point iP = Point::at_infinity();
                for (unsigned i = 0; i < N; ++i) {
                    Point r = iP;
                    for (unsigned j = 0; j < N; ++j) {
                        combos.push_back(exact_key(r));
                        r = Ee.add(r, Q);
                    }
                    iP = Ee.add(iP, P);
                }
                std::sort(combos.begin(), combos.end());
                if (std::adjacent_find(combos.begin(), combos.end()) == combos.end())
                    return TorsionBasis{ext, du, Ee, P, Q};
            }
        }
        throw Error(errc::BasisFailure, "full torsion present but no generating pair found");
    }
    throw Error(errc::CapExceeded, "no torsion field within the GL2 degree cap");
}

}  // namespace tatefrob
