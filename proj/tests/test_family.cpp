#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entangle/family.hpp"
#include "test_support.hpp"

using namespace entangle;

namespace {

HomogeneousPoly H(int d, std::vector<long> cs) {
    std::vector<BigInt> v(cs.begin(), cs.end());
    return HomogeneousPoly(d, std::move(v));
}

bool has_condition(const std::vector<ValidationIssue>& issues, const std::string& cond) {
    for (const auto& is : issues)
        if (is.condition == cond) return true;
    return false;
}

}  // namespace

TEST_CASE("builtin F1 matches the published family data") {
    FamilySpec f = builtin("F1");
    CHECK(f.d == 18);
    CHECK(f.r == 4);
    CHECK(f.sigma == std::vector<long>{2, 3});
    CHECK(f.C == H(4, {432, 0, 36, 0, 1}));
    CHECK(f.A0 == H(2, {-36, 0, -3}));
    CHECK(f.entanglement.a == 2);
    CHECK(f.entanglement.b == 3);

    // B(a,b) = 2a C(a,b)^2
    for (int trial = 0; trial < 50; ++trial) {
        BigInt a(test::rand_int(-30, 30)), b(test::rand_int(-30, 30));
        BigInt c = eval_homo(f.C, a, b);
        CHECK(eval_homo(f.B, a, b) == 2 * a * c * c);
    }

    const std::array<BigInt, 4> expect = {
        -(ipow(BigInt(2), 12) * ipow(BigInt(3), 10)),
        ipow(BigInt(2), 10) * ipow(BigInt(3), 8),
        ipow(BigInt(2), 16) * ipow(BigInt(3), 9),
        ipow(BigInt(2), 20) * ipow(BigInt(3), 12),
    };
    CHECK(f.sigma_witnesses == expect);
}

TEST_CASE("builtin F2 matches the published family data") {
    FamilySpec f = builtin("F2");
    CHECK(f.d == 24);
    CHECK(f.r == 4);
    CHECK(f.sigma == std::vector<long>{2, 3, 5});
    CHECK(f.C == H(4, {125, 0, 22, 0, 1}));
    CHECK(f.A0 == H(4, {-15, 0, -30, 0, -3}));
    CHECK(f.entanglement.b == 5);
    // B0 = 2 (u^4 + 4 u^2 v^2 - v^4) C
    CHECK(f.B0 == scale(mul(H(4, {-1, 0, 4, 0, 1}), f.C), 2));
}

TEST_CASE("unknown builtin") { CHECK_THROWS_AS(builtin("F3"), std::invalid_argument); }

TEST_CASE("from_polys reproduces the builtin") {
    FamilySpec ref = builtin("F1");
    FamilySpec f = from_polys("copy", ref.A, ref.B);
    CHECK(f.C == ref.C);
    CHECK(f.A0 == ref.A0);
    CHECK(f.B0 == ref.B0);
    CHECK(f.d == ref.d);
    CHECK(f.sigma == ref.sigma);
}

TEST_CASE("compute_sigma is empty when all witnesses are units") {
    // A0 = 1, B0 = u, C = u^2 + uv: all four witnesses are +-1
    auto [sigma, wit] = compute_sigma(HomogeneousPoly::constant(1),
                                      HomogeneousPoly::monomial(BigInt(1), 1, 0),
                                      H(2, {0, 1, 1}));
    CHECK(sigma.empty());
    for (const auto& w : wit) CHECK(abs(w) == 1);
}

TEST_CASE("jmap_value on the built-ins") {
    FamilySpec f1 = builtin("F1"), f2 = builtin("F2");
    CHECK(jmap_value(f1, 0, 1) == Rational(1728));
    CHECK(jmap_value(f1, 1, 1) == Rational(2197));
    CHECK(jmap_value(f2, 1, 1) == Rational(4096));
    CHECK_THROWS_AS(jmap_value(f2, 0, 1), std::domain_error);  // j_den = u^2 v^10
}

TEST_CASE("j_invariant basics") {
    CHECK(j_invariant(BigInt(-5), BigInt(0)) == Rational(1728));
    CHECK(j_invariant(BigInt(0), BigInt(7)) == Rational(0));
    CHECK_THROWS_AS(j_invariant(BigInt(0), BigInt(0)), std::domain_error);
    // singular: 4(-3)^3 + 27*2^2 = 0
    CHECK_THROWS_AS(j_invariant(BigInt(-3), BigInt(2)), std::domain_error);

    FamilySpec f1 = builtin("F1");
    CHECK(j_invariant(eval_homo(f1.A, 1, 1), eval_homo(f1.B, 1, 1)) == Rational(2197));
}

TEST_CASE("stored j-map equals the j-invariant of the model") {
    for (const char* name : {"F1", "F2"}) {
        FamilySpec f = builtin(name);
        int done = 0;
        while (done < 1000) {
            long a = test::rand_int(-80, 80), b = test::rand_int(1, 80);
            BigInt g;
            mpz_gcd(g.get_mpz_t(), BigInt(a).get_mpz_t(), BigInt(b).get_mpz_t());
            if (g != 1) continue;
            BigInt Av = eval_homo(f.A, a, b), Bv = eval_homo(f.B, a, b);
            if (4 * Av * Av * Av + 27 * Bv * Bv == 0) continue;
            if (eval_homo(*f.j_den, a, b) == 0) continue;
            REQUIRE(j_invariant(Av, Bv) == jmap_value(f, a, b));
            ++done;
        }
    }
}

TEST_CASE("F1 parity in a") {
    FamilySpec f = builtin("F1");
    for (int trial = 0; trial < 100; ++trial) {
        BigInt a(test::rand_int(-40, 40)), b(test::rand_int(-40, 40));
        CHECK(eval_homo(f.A, -a, b) == eval_homo(f.A, a, b));
        CHECK(eval_homo(f.B, -a, b) == -eval_homo(f.B, a, b));
    }
}

TEST_CASE("validator accepts the built-ins") {
    FamilySpec f1 = builtin("F1"), f2 = builtin("F2");
    CHECK(validate_family(f1.A, f1.B).empty());
    CHECK(validate_family(f2.A, f2.B).empty());
}

TEST_CASE("validator rejects a degree mismatch (i)") {
    FamilySpec f = builtin("F1");
    HomogeneousPoly A = mul(f.A, H(2, {1, 0, 1}));  // deg 8: 24 != 18
    auto issues = validate_family(A, f.B);
    CHECK(has_condition(issues, "i"));
}

TEST_CASE("validator rejects a common real root (ii)") {
    // shared root at (0 : 1)
    auto issues = validate_family(HomogeneousPoly::monomial(BigInt(1), 2, 1),
                                  HomogeneousPoly::monomial(BigInt(1), 3, 0));
    CHECK(has_condition(issues, "ii"));

    // C = u^2 - 2v^2 is squarefree with real roots; only (ii) fires
    HomogeneousPoly C = H(2, {-2, 0, 1});
    HomogeneousPoly A = mul(C, H(4, {1, 0, 0, 0, 1}));
    HomogeneousPoly B = mul(C, H(7, {2, 0, 0, 0, 0, 0, 0, 1}));
    auto only_ii = validate_family(A, B);
    REQUIRE(only_ii.size() == 1);
    CHECK(only_ii[0].condition == "ii");
}

TEST_CASE("validator rejects an identically singular family (iii)") {
    // A = -3 S^2, B = 2 S^3 has 4A^3 + 27B^2 = 0
    HomogeneousPoly S = H(2, {1, 0, 1});
    auto issues = validate_family(scale(pow(S, 2), -3), scale(pow(S, 3), 2));
    CHECK(has_condition(issues, "iii"));
}

TEST_CASE("validator rejects condition (iv) violations") {
    // non-squarefree C
    HomogeneousPoly S = H(2, {1, 0, 1});
    auto sq = validate_family(pow(S, 2), mul(HomogeneousPoly::monomial(BigInt(1), 2, 0), pow(S, 2)));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].condition == "iv");

    // r = 6 > 4
    HomogeneousPoly C6 = H(6, {1, 0, 0, 0, 0, 0, 1});
    auto big = validate_family(C6, mul(C6, H(3, {2, 0, 0, 1})));
    REQUIRE(big.size() == 1);
    CHECK(big[0].condition == "iv");

    // C divisible by u (necessarily also a real projective root)
    HomogeneousPoly Cu = mul(HomogeneousPoly::monomial(BigInt(1), 1, 0), S);  // u(u^2+v^2)
    auto divu = validate_family(mul(Cu, H(1, {1, 1})), mul(Cu, mul(H(1, {2, 1}), H(2, {1, 1, 2}))));
    CHECK(has_condition(divu, "iv"));
}

TEST_CASE("from_polys throws with every violated condition listed") {
    FamilySpec f = builtin("F1");
    HomogeneousPoly A = mul(f.A, H(2, {1, 0, 1}));
    try {
        from_polys("bad", A, f.B);
        FAIL("expected FamilyValidationError");
    } catch (const FamilyValidationError& e) {
        CHECK(has_condition(e.issues(), "i"));
    }
}

TEST_CASE("config json round trip") {
    FamilySpec f = builtin("F2");
    std::string text = to_config_json(f);
    FamilySpec g = from_config_json(text);
    CHECK(g.A == f.A);
    CHECK(g.B == f.B);
    CHECK(g.C == f.C);
    CHECK(g.d == f.d);
    CHECK(g.sigma == f.sigma);
    REQUIRE(g.j_num.has_value());
    CHECK(*g.j_num == *f.j_num);
}

TEST_CASE("config json validation errors") {
    CHECK_THROWS(from_config_json("{\"A\": {\"degree\": 2, \"coeffs\": [\"1\"]}}"));
    CHECK_THROWS(from_config_json("not json"));
    // coefficient strings must be decimal integers
    CHECK_THROWS(from_config_json(
        "{\"name\":\"x\",\"A\":{\"degree\":0,\"coeffs\":[\"1.5\"]},\"B\":{\"degree\":0,\"coeffs\":[\"1\"]}}"));
}
