#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "tatefrob/finite_field.hpp"

using namespace tatefrob;

namespace {
mpz_class Z(long v) { return mpz_class(v); }

std::set<mpz_class> value_set(const std::vector<FieldElement>& v) {
    std::set<mpz_class> s;
    for (const auto& e : v) s.insert(e.value());
    return s;
}
}  // namespace

TEST_CASE("field construction rejects bad parameters") {
    CHECK_THROWS_AS(FiniteField::make(Z(6), 1), Error);
    CHECK_THROWS_AS(FiniteField::make(Z(1), 1), Error);
    CHECK_THROWS_AS(FiniteField::make(Z(0), 2), Error);
    CHECK_THROWS_AS(FiniteField::make(mpz_class("4294967311"), 1), Error);  // first prime past 2^32
    CHECK_NOTHROW(FiniteField::make(Z(2), 1));
}

TEST_CASE("prime field uses modulus x and canonical arithmetic") {
    auto F7 = FiniteField::make(Z(7), 1);
    CHECK(F7->degree() == 1);
    CHECK(F7->cardinality() == 7);
    REQUIRE(F7->modulus().size() == 1);
    CHECK(F7->modulus()[0] == 0);  // m = x
    CHECK(F7->from_integer(Z(10)).value() == 3);
    CHECK(F7->from_integer(Z(-1)).value() == 6);
    CHECK((F7->from_integer(Z(3)) * F7->from_integer(Z(5))).value() == 1);
    CHECK(F7->from_integer(Z(3)).inverse().value() == 5);
    CHECK(F7->generator().value() == 0);  // class of x == 0 in F_p
}

TEST_CASE("modulus sieve picks the first irreducible in digit order") {
    // Hand-checked smallest cases: x^2+2 over F_5, x^2+1 over F_3,
    // x^2+x+1 over F_2, x^3+x+1 over F_2.
    auto F25 = FiniteField::make(Z(5), 2);
    CHECK(F25->modulus() == std::vector<mpz_class>{Z(2), Z(0)});
    auto F9 = FiniteField::make(Z(3), 2);
    CHECK(F9->modulus() == std::vector<mpz_class>{Z(1), Z(0)});
    auto F4 = FiniteField::make(Z(2), 2);
    CHECK(F4->modulus() == std::vector<mpz_class>{Z(1), Z(1)});
    auto F8 = FiniteField::make(Z(2), 3);
    CHECK(F8->modulus() == std::vector<mpz_class>{Z(1), Z(1), Z(0)});
}

TEST_CASE("field objects are memoized") {
    auto a = FiniteField::make(Z(11), 3);
    auto b = FiniteField::make(Z(11), 3);
    CHECK(a.get() == b.get());
}

TEST_CASE("element encoding round-trips and orders numerically") {
    auto F25 = FiniteField::make(Z(5), 2);
    for (long v : {0L, 1L, 4L, 5L, 13L, 24L}) {
        CHECK(F25->element_from_value(Z(v)).value() == v);
        CHECK(F25->element_at(static_cast<uint64_t>(v)).value() == v);
    }
    CHECK(F25->element_from_value(Z(7)) < F25->element_from_value(Z(12)));
    CHECK_FALSE(F25->element_from_value(Z(12)) < F25->element_from_value(Z(7)));
    CHECK_THROWS_AS(F25->element_from_value(Z(25)), Error);
    CHECK_THROWS_AS(F25->element_from_value(Z(-1)), Error);
    // generator of F_25 is the class of x: encoding 0 + 1*5
    CHECK(F25->generator().value() == 5);
    // g^2 = -2 = 3 because the modulus is x^2 + 2
    CHECK((F25->generator() * F25->generator()).value() == 3);
}

TEST_CASE("ring laws hold on pseudorandom samples of F_343") {
    auto F = FiniteField::make(Z(7), 3);
    // fixed sample of encodings spread over the field
    std::vector<uint64_t> picks = {1, 2, 6, 49, 50, 123, 200, 342, 7, 340};
    for (size_t i = 0; i < picks.size(); ++i) {
        FieldElement a = F->element_at(picks[i]);
        FieldElement b = F->element_at(picks[(i + 3) % picks.size()]);
        FieldElement c = F->element_at(picks[(i + 7) % picks.size()]);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK(a - a == F->zero());
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == F->one());
            CHECK((b / a) * a == b);
        }
        // Fermat: a^{q} = a
        CHECK(a.pow(F->cardinality()) == a);
    }
}

TEST_CASE("pow matches repeated multiplication") {
    auto F = FiniteField::make(Z(13), 2);
    FieldElement g = F->generator();
    FieldElement acc = F->one();
    for (int k = 0; k <= 20; ++k) {
        CHECK(g.pow(Z(k)) == acc);
        acc *= g;
    }
    CHECK(g.pow(Z(0)) == F->one());
}

TEST_CASE("frobenius_power is the arithmetic Frobenius of expected order") {
    auto F = FiniteField::make(Z(5), 4);
    FieldElement g = F->generator();
    FieldElement g5 = frobenius_power(g, Z(5));
    FieldElement g25 = frobenius_power(g, Z(25));
    CHECK(g5 != g);  // g generates the degree-4 extension, not fixed by phi
    CHECK(g25 != g); // nor by phi^2
    CHECK(frobenius_power(g5, Z(5)) == g25);
    CHECK(frobenius_power(g, Z(625)) == g);  // phi^4 = identity on F_{5^4}
    CHECK(frobenius_power(g, Z(1)) == g);
    CHECK_THROWS_AS(frobenius_power(g, Z(10)), Error);  // 10 is not a power of 5
    // Frobenius is a ring homomorphism
    FieldElement a = F->element_at(77), b = F->element_at(411);
    CHECK(frobenius_power(a * b, Z(5)) == frobenius_power(a, Z(5)) * frobenius_power(b, Z(5)));
    CHECK(frobenius_power(a + b, Z(5)) == frobenius_power(a, Z(5)) + frobenius_power(b, Z(5)));
}

TEST_CASE("embeddings are canonical ring homomorphisms") {
    auto F5 = FiniteField::make(Z(5), 1);
    auto F25 = FiniteField::make(Z(5), 2);
    auto F625 = FiniteField::make(Z(5), 4);

    const Embedding& e1 = Embedding::get(F5, F25);
    CHECK(e1(F5->from_integer(Z(3))) == F25->from_integer(Z(3)));

    const Embedding& e2 = Embedding::get(F25, F625);
    FieldElement rho = e2(F25->generator());
    // the image of the F_25 generator must satisfy its minimal relation x^2 = -2
    CHECK(rho * rho == F625->from_integer(Z(-2)));
    for (uint64_t u : {3u, 12u, 17u, 24u}) {
        for (uint64_t v : {1u, 8u, 19u, 23u}) {
            FieldElement a = F25->element_at(u), b = F25->element_at(v);
            CHECK(e2(a * b) == e2(a) * e2(b));
            CHECK(e2(a + b) == e2(a) + e2(b));
        }
    }
    // memoized
    CHECK(&Embedding::get(F25, F625) == &e2);
    // incompatible degrees rejected
    auto F125 = FiniteField::make(Z(5), 3);
    CHECK_THROWS_AS(Embedding::get(F25, F125), Error);
}

TEST_CASE("polynomial division round-trips") {
    auto F = FiniteField::make(Z(11), 1);
    Poly a = Poly::from_constants(F, {Z(3), Z(0), Z(7), Z(1), Z(9), Z(2), Z(4), Z(1)});
    Poly b = Poly::from_constants(F, {Z(5), Z(2), Z(0), Z(3)});
    Poly q, r;
    Poly::divmod(a, b, q, r);
    CHECK(b * q + r == a);
    CHECK(r.degree() < b.degree());
    // gcd((x-1)(x-2), (x-2)(x-3)) = x - 2
    Poly f1 = Poly::from_constants(F, {Z(2), Z(-3), Z(1)});
    Poly f2 = Poly::from_constants(F, {Z(6), Z(-5), Z(1)});
    Poly g = Poly::gcd(f1, f2);
    REQUIRE(g.degree() == 1);
    CHECK(g.coeff(1).value() == 1);
    CHECK(g.coeff(0).value() == 9);  // -2 mod 11
}

TEST_CASE("powmod agrees with naive power then mod") {
    auto F = FiniteField::make(Z(7), 1);
    Poly x = Poly::x(F);
    Poly m = Poly::from_constants(F, {Z(1), Z(1), Z(0), Z(1)});  // x^3 + x + 1
    Poly naive = Poly::from_constants(F, {Z(1)});
    for (int k = 0; k < 25; ++k) naive = naive * x;
    CHECK(x.powmod(Z(25), m) == naive.mod(m));
}

TEST_CASE("roots by exhaustive scan in small fields") {
    auto F3 = FiniteField::make(Z(3), 1);
    auto F9 = FiniteField::make(Z(3), 2);
    Poly f = Poly::from_constants(F3, {Z(1), Z(0), Z(1)});  // x^2 + 1
    CHECK(poly_roots(f, F3).empty());
    auto roots = poly_roots(f, F9);
    REQUIRE(roots.size() == 2);
    // x^2+1 is the defining modulus of F_9: roots are +-g, encodings 3 and 6
    CHECK(roots[0].value() == 3);
    CHECK(roots[1].value() == 6);
    // evaluation confirms
    for (const auto& r : roots) CHECK(f.embedded(F9).eval(r).is_zero());
    // repeated roots collapse: (x-1)^2 has the single root 1
    Poly sq = Poly::from_constants(F3, {Z(1), Z(-2), Z(1)});
    auto rr = poly_roots(sq, F3);
    REQUIRE(rr.size() == 1);
    CHECK(rr[0].value() == 1);
}

TEST_CASE("roots via equal-degree splitting in a large prime field") {
    auto F = FiniteField::make(Z(10007), 1);  // above the exhaustive-scan cutoff
    // (x-3)(x-5)(x-17) * (x^2+1); -1 is a non-residue mod 10007 (= 3 mod 4)
    Poly f = Poly::from_constants(F, {Z(-3), Z(1)}) * Poly::from_constants(F, {Z(-5), Z(1)}) *
             Poly::from_constants(F, {Z(-17), Z(1)}) * Poly::from_constants(F, {Z(1), Z(0), Z(1)});
    auto roots = poly_roots(f, F);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].value() == 3);
    CHECK(roots[1].value() == 5);
    CHECK(roots[2].value() == 17);
}

TEST_CASE("roots via trace splitting in a large binary field") {
    auto F = FiniteField::make(Z(2), 14);  // 16384 elements
    FieldElement a = F->element_at(1), b = F->element_at(2), c = F->element_at(5);
    Poly f = Poly(F, {a, F->one()}) * Poly(F, {b, F->one()}) * Poly(F, {c, F->one()});
    auto roots = poly_roots(f, F);
    REQUIRE(roots.size() == 3);
    CHECK(value_set(roots) == std::set<mpz_class>{Z(1), Z(2), Z(5)});
    CHECK(std::is_sorted(roots.begin(), roots.end(),
                         [](const FieldElement& x, const FieldElement& y) { return x < y; }));
}

TEST_CASE("roots found across an embedding") {
    // x^2 - 2 over F_5 has no roots in F_5 but two in F_25
    auto F5 = FiniteField::make(Z(5), 1);
    auto F25 = FiniteField::make(Z(5), 2);
    Poly f = Poly::from_constants(F5, {Z(-2), Z(0), Z(1)});
    CHECK(poly_roots(f, F5).empty());
    auto roots = poly_roots(f, F25);
    REQUIRE(roots.size() == 2);
    Poly fe = f.embedded(F25);
    for (const auto& r : roots) CHECK(fe.eval(r).is_zero());
}

TEST_CASE("multiplicative generator has full order") {
    auto F7 = FiniteField::make(Z(7), 1);
    CHECK(multiplicative_generator(F7).value() == 3);  // smallest primitive root mod 7
    auto F9 = FiniteField::make(Z(3), 2);
    FieldElement g = multiplicative_generator(F9);
    CHECK(g.pow(Z(8)) == F9->one());
    CHECK(g.pow(Z(4)) != F9->one());  // 8 = 2^3: enough to rule out proper divisors
}

TEST_CASE("least nonsquare matches quadratic residue tables") {
    auto F5 = FiniteField::make(Z(5), 1);
    CHECK(least_nonsquare(F5).value() == 2);
    auto F13 = FiniteField::make(Z(13), 1);
    CHECK(least_nonsquare(F13).value() == 2);
    auto F17 = FiniteField::make(Z(17), 1);
    CHECK(least_nonsquare(F17).value() == 3);  // 2 = 6^2 mod 17
}

TEST_CASE("square roots in odd characteristic") {
    auto F13 = FiniteField::make(Z(13), 1);  // 13 = 1 mod 4 exercises the general path
    auto s = sqrt_in_field(F13->from_integer(Z(4)));
    REQUIRE(s.has_value());
    CHECK(*s * *s == F13->from_integer(Z(4)));
    CHECK_FALSE(sqrt_in_field(F13->from_integer(Z(2))).has_value());
    auto F7 = FiniteField::make(Z(7), 1);  // 7 = 3 mod 4 exercises the shortcut
    auto t = sqrt_in_field(F7->from_integer(Z(2)));
    REQUIRE(t.has_value());
    CHECK(*t * *t == F7->from_integer(Z(2)));
    CHECK(sqrt_in_field(F7->zero())->is_zero());
    // extension field, q = 49 = 1 mod 4
    auto F49 = FiniteField::make(Z(7), 2);
    for (uint64_t u : {1u, 3u, 10u, 30u, 48u}) {
        FieldElement e = F49->element_at(u);
        FieldElement sq = e * e;
        auto r = sqrt_in_field(sq);
        REQUIRE(r.has_value());
        CHECK(*r * *r == sq);
    }
}

TEST_CASE("square roots in characteristic 2 always exist and are unique") {
    auto F16 = FiniteField::make(Z(2), 4);
    for (uint64_t u = 0; u < 16; ++u) {
        FieldElement e = F16->element_at(u);
        auto s = sqrt_in_field(e);
        REQUIRE(s.has_value());
        CHECK(*s * *s == e);
    }
}

TEST_CASE("absolute trace on binary fields") {
    auto F2 = FiniteField::make(Z(2), 1);
    CHECK(absolute_trace_char2(F2->one()) == 1);
    CHECK(absolute_trace_char2(F2->zero()) == 0);
    auto F4 = FiniteField::make(Z(2), 2);
    CHECK(absolute_trace_char2(F4->generator()) == 1);  // g + g^2 = g + (g+1) = 1
    CHECK(absolute_trace_char2(F4->one()) == 0);        // 1 + 1 = 0
    auto F8 = FiniteField::make(Z(2), 3);
    CHECK(absolute_trace_char2(F8->generator()) == 0);  // x + x^2 + x^4 = 0 mod x^3+x+1
    CHECK(absolute_trace_char2(F8->one()) == 1);        // three summands
    // trace is additive
    FieldElement a = F8->element_at(3), b = F8->element_at(6);
    CHECK(absolute_trace_char2(a + b) == (absolute_trace_char2(a) ^ absolute_trace_char2(b)));
}

TEST_CASE("quadratic solver y^2 + cy = d in odd characteristic") {
    auto F7 = FiniteField::make(Z(7), 1);
    // (y-2)(y-3) = 0  <=>  y^2 + 2y = 1 mod 7
    auto sols = solve_quadratic_y(F7->from_integer(Z(2)), F7->from_integer(Z(1)));
    CHECK(value_set(sols) == std::set<mpz_class>{Z(2), Z(3)});
    // (y+1)^2 = 0  <=>  y^2 + 2y = -1: double root y = 6
    auto dbl = solve_quadratic_y(F7->from_integer(Z(2)), F7->from_integer(Z(-1)));
    REQUIRE(dbl.size() == 1);
    CHECK(dbl[0].value() == 6);
    // y^2 = 3 has no solution mod 7 (3 is a non-residue)
    CHECK(solve_quadratic_y(F7->zero(), F7->from_integer(Z(3))).empty());
}

TEST_CASE("quadratic solver y^2 + cy = d in characteristic 2") {
    auto F4 = FiniteField::make(Z(2), 2);
    FieldElement g = F4->generator();
    // z^2 + z = 1 has solutions g and g+1 in F_4
    auto sols = solve_quadratic_y(F4->one(), F4->one());
    CHECK(value_set(sols) == std::set<mpz_class>{g.value(), (g + F4->one()).value()});
    // z^2 + z = g is unsolvable in F_4 (trace 1)
    CHECK(solve_quadratic_y(F4->one(), g).empty());
    // degenerate c = 0: unique square root
    auto one_sol = solve_quadratic_y(F4->zero(), g);
    REQUIRE(one_sol.size() == 1);
    CHECK(one_sol[0] * one_sol[0] == g);
    // larger field: verify every reported solution and the solution count parity
    auto F64 = FiniteField::make(Z(2), 6);
    int solvable = 0;
    for (uint64_t u = 0; u < 64; ++u) {
        FieldElement d = F64->element_at(u);
        auto ss = solve_quadratic_y(F64->one(), d);
        CHECK((ss.size() == 0 || ss.size() == 2));
        for (const auto& y : ss) CHECK(y * y + y == d);
        if (!ss.empty()) ++solvable;
    }
    CHECK(solvable == 32);  // image of z -> z^2+z has index 2
}
