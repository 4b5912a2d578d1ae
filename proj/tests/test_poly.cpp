#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entangle/poly.hpp"
#include "test_support.hpp"

using namespace entangle;

namespace {

HomogeneousPoly C1() { return HomogeneousPoly(4, {BigInt(432), BigInt(0), BigInt(36), BigInt(0), BigInt(1)}); }
HomogeneousPoly C2() { return HomogeneousPoly(4, {BigInt(125), BigInt(0), BigInt(22), BigInt(0), BigInt(1)}); }
HomogeneousPoly A0_1() { return HomogeneousPoly(2, {BigInt(-36), BigInt(0), BigInt(-3)}); }
HomogeneousPoly B0_1() { return mul(HomogeneousPoly::monomial(BigInt(2), 1, 0), C1()); }

UniPoly up(std::vector<long> cs) {
    std::vector<BigInt> v(cs.begin(), cs.end());
    return UniPoly(std::move(v));
}

BigInt p23(int e2, int e3) { return ipow(BigInt(2), e2) * ipow(BigInt(3), e3); }

}  // namespace

TEST_CASE("eval_homo matches hand substitution") {
    CHECK(eval_homo(C1(), 1, 1) == 469);
    CHECK(eval_homo(C2(), 1, 1) == 148);
    CHECK(eval_homo(mul(C1(), B0_1()), 0, 1) == 0);  // B of F1 vanishes at a = 0
    CHECK(eval_homo(HomogeneousPoly(), 5, 7) == 0);
}

TEST_CASE("eval_homo is multiplicative and homogeneous") {
    for (int trial = 0; trial < 200; ++trial) {
        HomogeneousPoly P = test::random_homopoly(4, 9), Q = test::random_homopoly(4, 9);
        BigInt a(test::rand_int(-20, 20)), b(test::rand_int(-20, 20));
        CHECK(eval_homo(mul(P, Q), a, b) == eval_homo(P, a, b) * eval_homo(Q, a, b));
        BigInt lam(test::rand_int(-5, 5));
        CHECK(eval_homo(P, lam * a, lam * b) ==
              ipow(lam, static_cast<unsigned long>(P.degree())) * eval_homo(P, a, b));
    }
}

TEST_CASE("dehomogenize both charts") {
    CHECK(dehomogenize(C1(), DehomSide::SetV1) == up({432, 0, 36, 0, 1}));
    CHECK(dehomogenize(C1(), DehomSide::SetU1) == up({1, 0, 36, 0, 432}));
    CHECK(dehomogenize(HomogeneousPoly(), DehomSide::SetV1).is_zero());
    CHECK(dehomogenize(HomogeneousPoly(), DehomSide::SetU1).is_zero());
}

TEST_CASE("gcd_homo recovers C for the built-in polynomials") {
    HomogeneousPoly A = mul(C1(), A0_1());
    HomogeneousPoly B = mul(C1(), B0_1());
    CHECK(gcd_homo(A, B) == C1());

    HomogeneousPoly A0_2 = HomogeneousPoly(4, {BigInt(-15), BigInt(0), BigInt(-30), BigInt(0), BigInt(-3)});
    HomogeneousPoly B0_2 = scale(mul(HomogeneousPoly(4, {BigInt(-1), BigInt(0), BigInt(4), BigInt(0), BigInt(1)}), C2()), 2);
    CHECK(gcd_homo(mul(C2(), A0_2), mul(C2(), B0_2)) == C2());
}

TEST_CASE("gcd_homo idempotence up to primitive normalization") {
    for (int trial = 0; trial < 100; ++trial) {
        HomogeneousPoly P = test::random_homopoly(4, 9);
        HomogeneousPoly g = gcd_homo(P, P);
        auto q = divide_exact(P, g);
        REQUIRE(q.has_value());
        CHECK(q->degree() == 0);  // P / gcd(P, P) is constant
    }
}

TEST_CASE("gcd_homo divides both inputs and sees planted factors") {
    for (int trial = 0; trial < 100; ++trial) {
        HomogeneousPoly G = test::random_homopoly(3, 5);
        HomogeneousPoly P = mul(G, test::random_homopoly(3, 5));
        HomogeneousPoly Q = mul(G, test::random_homopoly(3, 5));
        HomogeneousPoly g = gcd_homo(P, Q);
        CHECK(divide_exact(P, g).has_value());
        CHECK(divide_exact(Q, g).has_value());
        // the planted factor divides the gcd
        CHECK(divide_exact(g, gcd_homo(G, G)).has_value());
    }
}

TEST_CASE("gcd_homo keeps common monomial factors") {
    HomogeneousPoly P = mul(HomogeneousPoly::monomial(BigInt(3), 2, 1), C1());
    HomogeneousPoly Q = mul(HomogeneousPoly::monomial(BigInt(6), 1, 3), C1());
    HomogeneousPoly g = gcd_homo(P, Q);
    CHECK(g == mul(HomogeneousPoly::monomial(BigInt(1), 1, 1), C1()));
}

TEST_CASE("gcd_homo errors on double zero") {
    CHECK_THROWS_AS(gcd_homo(HomogeneousPoly(), HomogeneousPoly()), std::invalid_argument);
}

TEST_CASE("resultant basics and the F1 witnesses") {
    CHECK(resultant(up({-1, 1}), up({1, 1})) == 2);

    UniPoly a0t = dehomogenize(A0_1(), DehomSide::SetV1);
    UniPoly b0t = dehomogenize(B0_1(), DehomSide::SetV1);
    CHECK(resultant(a0t, b0t) == -p23(12, 10));

    UniPoly a0s = dehomogenize(A0_1(), DehomSide::SetU1);
    UniPoly b0s = dehomogenize(B0_1(), DehomSide::SetU1);
    CHECK(resultant(a0s, b0s) == p23(10, 8));

    CHECK_THROWS_AS(resultant(UniPoly(), up({1, 1})), std::invalid_argument);
}

TEST_CASE("resultant vanishes exactly on common factors") {
    for (int trial = 0; trial < 100; ++trial) {
        UniPoly p = test::random_unipoly(4, 9), q = test::random_unipoly(4, 9);
        UniPoly g = gcd_primitive(p, q);
        if (g.degree() >= 1)
            CHECK(resultant(p, q) == 0);
        else
            CHECK(resultant(p, q) != 0);
        // plant a common factor
        UniPoly f = test::random_unipoly(2, 5);
        if (f.degree() >= 1) CHECK(resultant(mul(p, f), mul(q, f)) == 0);
    }
}

TEST_CASE("discriminant values") {
    CHECK(discriminant(up({1, 0, 1})) == -4);  // t^2 + 1

    UniPoly ct = dehomogenize(C1(), DehomSide::SetV1);
    CHECK(discriminant(ct) == p23(16, 9));

    // The reversed chart has leading coefficient 432, so the resultant with
    // the derivative carries that extra factor over the normalized
    // discriminant; the sigma machinery uses the resultant form.
    UniPoly cs = dehomogenize(C1(), DehomSide::SetU1);
    CHECK(discriminant(cs) == p23(16, 9));
    CHECK(resultant(cs, cs.derivative()) == p23(20, 12));

    CHECK_THROWS_AS(discriminant(up({7})), std::invalid_argument);
}

TEST_CASE("squarefreeness") {
    CHECK(is_squarefree(up({432, 0, 36, 0, 1})));
    CHECK_FALSE(is_squarefree(mul(up({-1, 1}), up({-1, 1}))));
    CHECK(is_squarefree(up({0, 1})));
}

TEST_CASE("count_real_roots on fixed cases") {
    CHECK(count_real_roots(up({432, 0, 36, 0, 1})) == 0);
    CHECK(count_real_roots(up({125, 0, 22, 0, 1})) == 0);
    CHECK(count_real_roots(up({-1, 0, 1})) == 2);
    CHECK(count_real_roots(up({0, 1})) == 1);
    CHECK_THROWS_AS(count_real_roots(mul(up({-1, 1}), up({-1, 1}))), std::invalid_argument);
}

TEST_CASE("count_real_roots agrees with planted roots and bisection") {
    for (int trial = 0; trial < 300; ++trial) {
        auto planted = test::planted_poly(3, 2);
        if (planted.poly.degree() < 1) continue;
        CHECK(count_real_roots(planted.poly) == planted.real_roots);
        CHECK(test::bisection_root_count(planted.poly) == planted.real_roots);
    }
}

TEST_CASE("squarefree_part strips multiplicity") {
    UniPoly p = mul(mul(up({-1, 1}), up({-1, 1})), up({3, 1}));
    UniPoly sf = squarefree_part(p);
    CHECK(sf == mul(up({-1, 1}), up({3, 1})));
}

TEST_CASE("divide_exact round trip") {
    for (int trial = 0; trial < 200; ++trial) {
        HomogeneousPoly P = test::random_homopoly(4, 9), Q = test::random_homopoly(3, 9);
        auto q = divide_exact(mul(P, Q), Q);
        REQUIRE(q.has_value());
        CHECK(*q == P);
    }
}
