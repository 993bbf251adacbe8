#include "tatefrob/finite_field.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace tatefrob {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

inline u64 addm(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 powm_word(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv_word(u64 a, u64 p) { return powm_word(a % p, p - 2, p); }

// splitmix64: deterministic stream for equal-degree splitting choices.
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

u64 hash_mix(u64 h, u64 v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

// ---------------------------------------------------------------------------
// Raw polynomials over F_p: coefficient-of-x^i vectors, trimmed.
// Used for modulus sieving and element inversion.
// ---------------------------------------------------------------------------
using FpPoly = std::vector<u64>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod m in place; m monic.
void fp_rem(FpPoly& a, const FpPoly& m, u64 p) {
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        u64 v = a.back();
        a.pop_back();
        if (v) {
            const size_t off = a.size() - dm;
            for (size_t j = 0; j < dm; ++j)
                if (m[j]) a[off + j] = static_cast<u64>(((u128)(p - m[j]) * v + a[off + j]) % p);
        }
    }
    fp_trim(a);
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<u64>(((u128)a[i] * b[j] + r[i + j]) % p);
    }
    fp_rem(r, m, p);
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // reduce a mod b (b not necessarily monic)
        u64 il = inv_word(b.back(), p);
        while (a.size() >= b.size()) {
            u64 c = mulm(a.back(), il, p);
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[off + j] = subm(a[off + j], mulm(c, b[j], p), p);
            fp_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 il = inv_word(a.back(), p);
        for (auto& c : a) c = mulm(c, il, p);
    }
    return a;
}

FpPoly fp_pow_elem(FpPoly a, const mpz_class& e, const FpPoly& m, u64 p) {
    FpPoly r{1 % p};
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = fp_mulmod(r, r, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mulmod(r, a, m, p);
    }
    return r;
}

// Distinct-degree sieve: m monic of degree n is irreducible iff it has no
// irreducible factor of degree <= n/2 (checked via gcd(x^{p^i} - x, m)).
bool fp_irreducible(const FpPoly& m, u64 p) {
    const size_t n = m.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    FpPoly xp{0, 1};
    fp_rem(xp, m, p);
    FpPoly xqi = xp;  // will hold x^{p^i} mod m
    for (size_t i = 1; i <= n / 2; ++i) {
        xqi = fp_pow_elem(xqi, mpz_class(static_cast<unsigned long>(p)), m, p);
        FpPoly d = xqi;
        // d -= x
        if (d.size() < 2) d.resize(2, 0);
        d[1] = subm(d[1], 1, p);
        fp_trim(d);
        FpPoly g = fp_gcd(d, m, p);
        if (!(g.size() == 1)) return false;  // nontrivial gcd (g==0 impossible: m has higher degree)
    }
    return true;
}

// a^{-1} mod m via extended Euclid; a nonzero mod m, m monic irreducible.
FpPoly fp_xgcd_inverse(FpPoly a, FpPoly m, u64 p) {
    fp_trim(a);
    FpPoly r0 = m, r1 = a;
    FpPoly t0{}, t1{1};
    while (!r1.empty()) {
        // q, rem = divmod(r0, r1)
        FpPoly q;
        u64 il = inv_word(r1.back(), p);
        FpPoly rem = r0;
        fp_trim(rem);
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            u64 c = mulm(rem.back(), il, p);
            size_t off = rem.size() - r1.size();
            q[off] = c;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[off + j] = subm(rem[off + j], mulm(c, r1[j], p), p);
            fp_trim(rem);
        }
        // t0, t1 = t1, t0 - q*t1
        FpPoly qt;
        if (!q.empty() && !t1.empty()) {
            qt.assign(q.size() + t1.size() - 1, 0);
            for (size_t i = 0; i < q.size(); ++i) {
                if (!q[i]) continue;
                for (size_t j = 0; j < t1.size(); ++j)
                    qt[i + j] = static_cast<u64>(((u128)q[i] * t1[j] + qt[i + j]) % p);
            }
        }
        FpPoly nt = t0;
        if (nt.size() < qt.size()) nt.resize(qt.size(), 0);
        for (size_t i = 0; i < qt.size(); ++i) nt[i] = subm(nt[i], qt[i], p);
        fp_trim(nt);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    // r0 = gcd (a unit times 1 for irreducible m and a != 0)
    if (r0.size() != 1) throw Error(errc::InternalInconsistency, "inverse of non-unit field element");
    u64 il = inv_word(r0[0], p);
    for (auto& c : t0) c = mulm(c, il, p);
    fp_trim(t0);
    return t0;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteField
// ---------------------------------------------------------------------------

FiniteField::FiniteField(mpz_class p, unsigned r, u64 pu, std::vector<u64> mod)
    : p_(std::move(p)), r_(r), pu_(pu), mod_(std::move(mod)) {
    mpz_pow_ui(card_.get_mpz_t(), p_.get_mpz_t(), r_);
}

FieldPtr FiniteField::make(const mpz_class& p, unsigned r) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw Error(errc::NonPrime, "characteristic is not prime: " + p.get_str());
    if (r < 1) throw Error(errc::TooLarge, "extension degree must be >= 1");
    if (mpz_sizeinbase(p.get_mpz_t(), 2) > 32)
        throw Error(errc::TooLarge, "characteristic above instantiation cap 2^32: " + p.get_str());
    if (r > 4096) throw Error(errc::TooLarge, "extension degree above instantiation cap 4096");

    static std::map<std::pair<mpz_class, unsigned>, FieldPtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const u64 pu = p.get_ui();
    // Deterministic sieve: k = 0, 1, 2, ... gives the low coefficients of the
    // candidate x^r + c_{r-1}x^{r-1} + ... + c_0 as base-p digits of k.
    std::vector<u64> low(r, 0);
    for (u64 k = 0;; ++k) {
        u64 t = k;
        for (unsigned i = 0; i < r; ++i) {
            low[i] = t % pu;
            t /= pu;
        }
        if (t != 0) throw Error(errc::InternalInconsistency, "modulus sieve exhausted");
        FpPoly cand(low.begin(), low.end());
        cand.push_back(1);
        if (fp_irreducible(cand, pu)) break;
    }
    FieldPtr f(new FiniteField(p, r, pu, low));
    cache.emplace(std::move(key), f);
    return f;
}

std::vector<mpz_class> FiniteField::modulus() const {
    std::vector<mpz_class> out;
    out.reserve(r_);
    for (u64 c : mod_) out.emplace_back(static_cast<unsigned long>(c));
    return out;
}

FieldElement FiniteField::zero() const {
    return FieldElement(shared_from_this(), std::vector<u64>(r_, 0));
}

FieldElement FiniteField::one() const {
    std::vector<u64> c(r_, 0);
    c[0] = 1 % pu_;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FiniteField::from_integer(const mpz_class& n) const {
    mpz_class m = n % p_;
    if (m < 0) m += p_;
    std::vector<u64> c(r_, 0);
    c[0] = m.get_ui();
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FiniteField::generator() const {
    std::vector<u64> c(r_, 0);
    if (r_ == 1) {
        // modulus is x: the generator class is 0, i.e. the prime field itself.
        c[0] = 0;
    } else {
        c[1] = 1;
    }
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FiniteField::element_from_value(const mpz_class& v) const {
    if (v < 0 || v >= card_) throw Error(errc::TooLarge, "element encoding out of range: " + v.get_str());
    mpz_class t = v, q, rem;
    std::vector<u64> c(r_, 0);
    for (unsigned i = 0; i < r_; ++i) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(pu_));
        c[i] = rem.get_ui();
        t = q;
    }
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FiniteField::element_at(u64 idx) const {
    std::vector<u64> c(r_, 0);
    for (unsigned i = 0; i < r_ && idx; ++i) {
        c[i] = idx % pu_;
        idx /= pu_;
    }
    return FieldElement(shared_from_this(), std::move(c));
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr f, std::vector<u64> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    assert(c_.size() == f_->degree());
}

bool FieldElement::is_zero() const {
    for (u64 v : c_)
        if (v) return false;
    return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
    assert(f_.get() == o.f_.get());
    return c_ == o.c_;
}

bool FieldElement::operator<(const FieldElement& o) const {
    assert(f_.get() == o.f_.get());
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement r = *this;
    r += o;
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement r = *this;
    r -= o;
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    const u64 p = f_->pu_;
    for (auto& v : r.c_) v = v ? p - v : 0;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    assert(f_.get() == o.f_.get());
    const u64 p = f_->pu_;
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = addm(c_[i], o.c_[i], p);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    assert(f_.get() == o.f_.get());
    const u64 p = f_->pu_;
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = subm(c_[i], o.c_[i], p);
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    assert(f_.get() == o.f_.get());
    const FiniteField& F = *f_;
    const u64 p = F.pu_;
    const unsigned n = F.r_;
    if (n == 1) {
        c_[0] = mulm(c_[0], o.c_[0], p);
        return *this;
    }
    static thread_local std::vector<u128> acc;
    static thread_local std::vector<u64> t;
    acc.assign(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
        if (!c_[i]) continue;
        const u128 ai = c_[i];
        for (unsigned j = 0; j < n; ++j) acc[i + j] += ai * o.c_[j];
    }
    t.resize(2 * n - 1);
    for (unsigned k = 0; k < 2 * n - 1; ++k) t[k] = static_cast<u64>(acc[k] % p);
    const std::vector<u64>& m = F.mod_;
    for (unsigned i = 2 * n - 2; i >= n; --i) {
        const u64 v = t[i];
        if (v) {
            const unsigned off = i - n;
            for (unsigned j = 0; j < n; ++j)
                if (m[j]) t[off + j] = static_cast<u64>(((u128)(p - m[j]) * v + t[off + j]) % p);
        }
        if (i == n) break;
    }
    std::copy(t.begin(), t.begin() + n, c_.begin());
    return *this;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    FieldElement r = *this;
    r *= o;
    return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(errc::InternalInconsistency, "division by zero field element");
    const FiniteField& F = *f_;
    if (F.r_ == 1) {
        std::vector<u64> c{inv_word(c_[0], F.pu_)};
        return FieldElement(f_, std::move(c));
    }
    FpPoly a(c_.begin(), c_.end());
    FpPoly m(F.mod_.begin(), F.mod_.end());
    m.push_back(1);
    FpPoly inv = fp_xgcd_inverse(std::move(a), std::move(m), F.pu_);
    inv.resize(F.r_, 0);
    return FieldElement(f_, std::vector<u64>(inv.begin(), inv.end()));
}

FieldElement FieldElement::pow(const mpz_class& e) const {
    assert(e >= 0);
    FieldElement r = f_->one();
    if (e == 0) return r;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r *= r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r *= *this;
    }
    return r;
}

mpz_class FieldElement::value() const {
    mpz_class v = 0;
    const mpz_class& p = f_->characteristic();
    for (size_t i = c_.size(); i-- > 0;) {
        v *= p;
        v += static_cast<unsigned long>(c_[i]);
    }
    return v;
}

FieldElement frobenius_power(const FieldElement& e, const mpz_class& q) {
    // q must be a power of the characteristic (q = 1 gives the identity).
    if (q < 1) throw Error(errc::InternalInconsistency, "frobenius exponent must be positive");
    mpz_class rest;
    mpz_remove(rest.get_mpz_t(), q.get_mpz_t(), e.field()->characteristic().get_mpz_t());
    if (rest != 1) throw Error(errc::InternalInconsistency, "frobenius exponent is not a power of p");
    return e.pow(q);
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

Embedding::Embedding(FieldPtr from, FieldPtr to, std::vector<FieldElement> gen_powers)
    : from_(std::move(from)), to_(std::move(to)), gen_powers_(std::move(gen_powers)) {}

const Embedding& Embedding::get(const FieldPtr& from, const FieldPtr& to) {
    static std::map<std::pair<const FiniteField*, const FiniteField*>, std::unique_ptr<Embedding>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(from.get(), to.get());
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    if (from->characteristic() != to->characteristic() || to->degree() % from->degree() != 0)
        throw Error(errc::InternalInconsistency, "embedding target is not an extension");
    std::vector<FieldElement> pows;
    if (from.get() == to.get()) {
        FieldElement g = from->generator();
        FieldElement acc = from->one();
        for (unsigned i = 0; i < from->degree(); ++i) {
            pows.push_back(acc);
            acc *= g;
        }
    } else if (from->degree() == 1) {
        pows.push_back(to->one());
    } else {
        std::vector<mpz_class> lowc = from->modulus();
        std::vector<FieldElement> cc;
        cc.reserve(from->degree() + 1);
        for (const auto& c : lowc) cc.push_back(to->from_integer(c));
        cc.push_back(to->one());
        Poly mod_up(to, std::move(cc));
        std::vector<FieldElement> roots = poly_roots(mod_up, to);
        if (roots.empty()) throw Error(errc::InternalInconsistency, "base modulus has no root in extension");
        FieldElement rho = roots.front();  // least root: canonical choice
        FieldElement acc = to->one();
        for (unsigned i = 0; i < from->degree(); ++i) {
            pows.push_back(acc);
            acc *= rho;
        }
    }
    auto emb = std::unique_ptr<Embedding>(new Embedding(from, to, std::move(pows)));
    const Embedding& ref = *emb;
    cache.emplace(key, std::move(emb));
    return ref;
}

FieldElement Embedding::operator()(const FieldElement& e) const {
    assert(e.field().get() == from_.get());
    FieldElement acc = to_->zero();
    const auto& c = e.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        acc += gen_powers_[i] * to_->from_integer(mpz_class(static_cast<unsigned long>(c[i])));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Poly
// ---------------------------------------------------------------------------

Poly::Poly(FieldPtr f, std::vector<FieldElement> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    for (const auto& e : c_) assert(e.field().get() == f_.get());
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::from_constants(const FieldPtr& f, const std::vector<mpz_class>& consts) {
    std::vector<FieldElement> c;
    c.reserve(consts.size());
    for (const auto& v : consts) c.push_back(f->from_integer(v));
    return Poly(f, std::move(c));
}

Poly Poly::x(const FieldPtr& f) { return Poly(f, {f->zero(), f->one()}); }

const FieldElement& Poly::coeff(size_t i) const {
    assert(i < c_.size());
    return c_[i];
}

FieldElement Poly::lead() const {
    assert(!c_.empty());
    return c_.back();
}

bool Poly::operator==(const Poly& o) const { return c_ == o.c_; }

Poly Poly::operator+(const Poly& o) const {
    std::vector<FieldElement> r = c_.size() >= o.c_.size() ? c_ : o.c_;
    const std::vector<FieldElement>& s = c_.size() >= o.c_.size() ? o.c_ : c_;
    for (size_t i = 0; i < s.size(); ++i) r[i] += s[i];
    return Poly(f_ ? f_ : o.f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<FieldElement> r = c_;
    r.resize(std::max(c_.size(), o.c_.size()), (f_ ? f_ : o.f_)->zero());
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(f_ ? f_ : o.f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_ ? f_ : o.f_);
    std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, f_->zero());
    FieldElement tmp;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            tmp = c_[i];
            tmp *= o.c_[j];
            r[i + j] += tmp;
        }
    }
    return Poly(f_, std::move(r));
}

Poly Poly::operator*(const FieldElement& s) const {
    std::vector<FieldElement> r = c_;
    for (auto& e : r) e *= s;
    return Poly(f_, std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    FieldElement il = c_.back().inverse();
    return *this * il;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.is_zero()) throw Error(errc::InternalInconsistency, "polynomial division by zero");
    const FieldPtr& f = b.f_;
    if (a.degree() < b.degree()) {
        q = Poly(f);
        r = a;
        return;
    }
    std::vector<FieldElement> rem = a.c_;
    std::vector<FieldElement> quo(a.c_.size() - b.c_.size() + 1, f->zero());
    const FieldElement il = b.c_.back().inverse();
    FieldElement tmp;
    for (size_t k = rem.size(); k-- >= b.c_.size();) {
        if (rem[k].is_zero()) {
            if (k == b.c_.size() - 1) break;
            continue;
        }
        FieldElement c = rem[k] * il;
        quo[k - (b.c_.size() - 1)] = c;
        const size_t off = k - (b.c_.size() - 1);
        for (size_t j = 0; j < b.c_.size(); ++j) {
            tmp = c;
            tmp *= b.c_[j];
            rem[off + j] -= tmp;
        }
        if (k == b.c_.size() - 1) break;
    }
    q = Poly(f, std::move(quo));
    r = Poly(f, std::move(rem));
}

Poly Poly::mod(const Poly& m) const {
    Poly q, r;
    divmod(*this, m, q, r);
    return r;
}

Poly Poly::mulmod(const Poly& o, const Poly& m) const { return (*this * o).mod(m); }

Poly Poly::powmod(const mpz_class& e, const Poly& m) const {
    assert(e >= 0);
    Poly r = Poly::from_constants(f_, {1}).mod(m);
    if (e == 0) return r;
    Poly base = this->mod(m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = r.mulmod(r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r.mulmod(base, m);
    }
    return r;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FieldElement Poly::eval(const FieldElement& at) const {
    FieldElement acc = at.field()->zero();
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= at;
        acc += c_[i];
    }
    return acc;
}

Poly Poly::embedded(const FieldPtr& ext) const {
    if (f_.get() == ext.get()) return *this;
    const Embedding& emb = Embedding::get(f_, ext);
    std::vector<FieldElement> c;
    c.reserve(c_.size());
    for (const auto& e : c_) c.push_back(emb(e));
    return Poly(ext, std::move(c));
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

namespace {

u64 poly_seed(const Poly& g) {
    u64 h = 0x243f6a8885a308d3ULL;
    h = hash_mix(h, g.field()->pw());
    h = hash_mix(h, g.field()->degree());
    for (const auto& e : g.coeffs())
        for (u64 w : e.coeffs()) h = hash_mix(h, w);
    return h;
}

FieldElement random_element(const FieldPtr& f, Rng& rng) {
    std::vector<u64> c(f->degree());
    for (auto& w : c) w = rng.next() % f->pw();
    return FieldElement(f, std::move(c));
}

// h: product of distinct monic linear factors over its own field; collect roots.
void edf_linear(const Poly& h, std::vector<FieldElement>& out, Rng& rng) {
    const FieldPtr& f = h.field();
    if (h.degree() <= 0) return;
    if (h.degree() == 1) {
        out.push_back(-h.coeff(0));  // monic: x + c0
        return;
    }
    const mpz_class& Q = f->cardinality();
    for (int attempt = 0; attempt < 256; ++attempt) {
        Poly d(f);
        if (f->characteristic() == 2) {
            // trace splitting: t = sum_{i<k} (alpha*x)^{2^i} mod h
            FieldElement alpha = random_element(f, rng);
            if (alpha.is_zero()) continue;
            Poly term = Poly(f, {f->zero(), alpha}).mod(h);
            Poly acc = term;
            size_t k = mpz_sizeinbase(Q.get_mpz_t(), 2) - 1;  // Q = 2^k
            for (size_t i = 1; i < k; ++i) {
                term = term.mulmod(term, h);
                acc = acc + term;
            }
            d = Poly::gcd(acc, h);
        } else {
            FieldElement delta = random_element(f, rng);
            mpz_class e = (Q - 1) / 2;
            Poly u = Poly(f, {delta, f->one()}).powmod(e, h);
            u = u - Poly::from_constants(f, {1});
            d = Poly::gcd(u, h);
        }
        if (d.degree() > 0 && d.degree() < h.degree()) {
            Poly q, r;
            Poly::divmod(h, d, q, r);
            edf_linear(d, out, rng);
            edf_linear(q, out, rng);
            return;
        }
    }
    throw Error(errc::InternalInconsistency, "equal-degree splitting failed to converge");
}

}  // namespace

std::vector<FieldElement> poly_roots(const Poly& f, const FieldPtr& ext) {
    if (f.is_zero()) throw Error(errc::InternalInconsistency, "root finding on the zero polynomial");
    Poly g = f.embedded(ext).monic();
    std::vector<FieldElement> roots;
    if (g.degree() <= 0) return roots;
    if (ext->cardinality() <= 10000) {
        const u64 n = ext->cardinality().get_ui();
        for (u64 i = 0; i < n; ++i) {
            FieldElement e = ext->element_at(i);
            if (g.eval(e).is_zero()) roots.push_back(e);
        }
        return roots;  // enumeration order == encoding order
    }
    // linear-factor part: gcd(x^Q - x, g)
    Poly xq = Poly::x(ext).powmod(ext->cardinality(), g);
    Poly h = Poly::gcd(xq - Poly::x(ext), g);
    if (h.degree() >= 1) {
        Rng rng(poly_seed(g));
        edf_linear(h, roots, rng);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Multiplicative / quadratic utilities
// ---------------------------------------------------------------------------

FieldElement multiplicative_generator(const FieldPtr& f) {
    const mpz_class& q = f->cardinality();
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > 62)
        throw Error(errc::TooLarge, "generator search needs cardinality below 2^62");
    u64 n = q.get_ui() - 1;
    std::vector<u64> primes;
    u64 t = n;
    for (u64 d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            primes.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) primes.push_back(t);
    for (u64 idx = 1; idx <= n; ++idx) {
        FieldElement e = f->element_at(idx);
        bool ok = true;
        for (u64 ell : primes)
            if (e.pow(mpz_class(static_cast<unsigned long>(n / ell))) == f->one()) {
                ok = false;
                break;
            }
        if (ok) return e;
    }
    throw Error(errc::InternalInconsistency, "no multiplicative generator found");
}

namespace {
const FieldElement& cached_nonsquare(const FieldPtr& f) {
    static std::map<const FiniteField*, FieldElement> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(f.get());
    if (it != cache.end()) return it->second;
    mpz_class e = (f->cardinality() - 1) / 2;
    for (u64 idx = 2;; ++idx) {
        FieldElement c = f->element_at(idx);
        if (c.is_zero()) continue;
        if (!(c.pow(e) == f->one())) {
            auto res = cache.emplace(f.get(), c);
            return res.first->second;
        }
        if (idx > (1u << 20)) break;
    }
    throw Error(errc::InternalInconsistency, "no quadratic non-residue found");
}
}  // namespace

FieldElement least_nonsquare(const FieldPtr& f) {
    if (f->characteristic() == 2) throw Error(errc::InternalInconsistency, "non-residues need odd characteristic");
    return cached_nonsquare(f);
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& e) {
    const FieldPtr& f = e.field();
    const mpz_class& q = f->cardinality();
    if (e.is_zero()) return e;
    if (f->characteristic() == 2) return e.pow(q / 2);  // squaring is a bijection
    mpz_class half = (q - 1) / 2;
    if (!(e.pow(half) == f->one())) return std::nullopt;
    FieldElement s = f->zero();
    if (q % 4 == 3) {
        s = e.pow((q + 1) / 4);
    } else {
        // Tonelli-Shanks with the cached deterministic non-residue.
        mpz_class t = q - 1;
        unsigned long sexp = mpz_scan1(t.get_mpz_t(), 0);
        t >>= sexp;
        FieldElement z = least_nonsquare(f).pow(t);
        FieldElement x = e.pow((t + 1) / 2);
        FieldElement b = e.pow(t);
        unsigned long m = sexp;
        while (!(b == f->one())) {
            unsigned long i = 0;
            FieldElement bb = b;
            while (!(bb == f->one())) {
                bb = bb.square();
                ++i;
                if (i == m) throw Error(errc::InternalInconsistency, "square root iteration diverged");
            }
            FieldElement zpow = z;
            for (unsigned long k = 0; k + i + 1 < m; ++k) zpow = zpow.square();
            x *= zpow;
            z = zpow.square();
            b *= z;
            m = i;
        }
        s = x;
    }
    if (!(s * s == e)) throw Error(errc::InternalInconsistency, "square root verification failed");
    return s;
}

int absolute_trace_char2(const FieldElement& e) {
    const FieldPtr& f = e.field();
    assert(f->characteristic() == 2);
    size_t k = mpz_sizeinbase(f->cardinality().get_mpz_t(), 2) - 1;
    FieldElement acc = e, t = e;
    for (size_t i = 1; i < k; ++i) {
        t = t.square();
        acc += t;
    }
    if (acc.is_zero()) return 0;
    if (acc == f->one()) return 1;
    throw Error(errc::InternalInconsistency, "trace landed outside the prime field");
}

std::vector<FieldElement> solve_quadratic_y(const FieldElement& c, const FieldElement& d) {
    const FieldPtr& f = c.field();
    std::vector<FieldElement> out;
    if (f->characteristic() == 2) {
        if (c.is_zero()) {
            out.push_back(*sqrt_in_field(d));
            return out;
        }
        // y = c*z with z^2 + z = d/c^2; solvable iff the absolute trace vanishes.
        FieldElement w = d * (c * c).inverse();
        if (absolute_trace_char2(w) != 0) return out;
        // z^2 + z is F_2-linear: solve by Gaussian elimination in the power basis.
        const unsigned n = f->degree();
        FieldElement g = f->generator();
        std::vector<std::vector<u64>> cols;
        FieldElement basis = f->one();
        for (unsigned i = 0; i < n; ++i) {
            FieldElement img = basis.square() + basis;
            cols.push_back(img.coeffs());
            basis *= g;
        }
        // rows: n equations; augmented with w
        std::vector<u64> rhs = w.coeffs();
        std::vector<std::vector<u64>> M(n, std::vector<u64>(n + 1, 0));
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned j = 0; j < n; ++j) M[i][j] = cols[j][i];
            M[i][n] = rhs[i];
        }
        std::vector<int> pivot_col(n, -1);
        unsigned row = 0;
        for (unsigned col = 0; col < n && row < n; ++col) {
            unsigned sel = row;
            while (sel < n && M[sel][col] == 0) ++sel;
            if (sel == n) continue;
            std::swap(M[sel], M[row]);
            for (unsigned i = 0; i < n; ++i)
                if (i != row && M[i][col])
                    for (unsigned j = col; j <= n; ++j) M[i][j] ^= M[row][j];
            pivot_col[row] = static_cast<int>(col);
            ++row;
        }
        std::vector<u64> z(n, 0);
        for (unsigned i = 0; i < row; ++i) z[pivot_col[i]] = M[i][n];
        for (unsigned i = row; i < n; ++i)
            if (M[i][n]) throw Error(errc::InternalInconsistency, "Artin-Schreier system inconsistent despite zero trace");
        FieldElement ze(f, std::move(z));
        if (!(ze.square() + ze == w)) throw Error(errc::InternalInconsistency, "Artin-Schreier solution check failed");
        FieldElement y0 = c * ze;
        out.push_back(y0);
        out.push_back(y0 + c);
        return out;
    }
    // odd characteristic: complete the square
    FieldElement inv2 = f->from_integer(2).inverse();
    FieldElement halfc = c * inv2;
    FieldElement disc = halfc * halfc + d;
    auto s = sqrt_in_field(disc);
    if (!s) return out;
    if (s->is_zero()) {
        out.push_back(-halfc);
        return out;
    }
    out.push_back(*s - halfc);
    out.push_back(-*s - halfc);
    return out;
}

}  // namespace tatefrob
