#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "entangle/localdensity.hpp"
#include "entangle/modarith.hpp"
#include "test_support.hpp"

using namespace entangle;

namespace {

UniPoly up(std::vector<long> cs) {
    std::vector<BigInt> v(cs.begin(), cs.end());
    return UniPoly(std::move(v));
}

UniPoly c1_poly() { return up({432, 0, 36, 0, 1}); }

Rational rat(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

}  // namespace

TEST_CASE("legendre symbol") {
    CHECK(legendre(BigInt(1), 7) == 1);
    CHECK(legendre(BigInt(2), 7) == 1);
    CHECK(legendre(BigInt(5), 7) == -1);
    CHECK(legendre(BigInt(0), 7) == 0);
    CHECK(legendre(BigInt(-432), 7) == 1);   // -432 = 2 mod 7
    CHECK(legendre(BigInt(-432), 5) == -1);  // -432 = 3 mod 5
    CHECK_THROWS_AS(legendre(BigInt(1), 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(BigInt(1), 9), std::invalid_argument);
}

TEST_CASE("legendre is multiplicative") {
    for (long ell : {7L, 11L, 13L, 101L}) {
        for (int trial = 0; trial < 50; ++trial) {
            BigInt a(test::rand_int(1, 1000)), b(test::rand_int(1, 1000));
            if (a % ell == 0 || b % ell == 0) continue;
            CHECK(legendre(a * b, ell) == legendre(a, ell) * legendre(b, ell));
        }
    }
}

TEST_CASE("sqrt_mod produces the canonical root") {
    CHECK(sqrt_mod(BigInt(0), 7) == 0);
    CHECK(sqrt_mod(BigInt(2), 7) == 3);  // roots 3 and 4; canonical <= 3.5
    CHECK_FALSE(sqrt_mod(BigInt(5), 7).has_value());
    for (long ell : {5L, 13L, 17L, 97L, 101L}) {  // both 1 and 3 mod 4
        for (long x = 0; x < ell; ++x) {
            auto r = sqrt_mod(BigInt(x), ell);
            if (!r) {
                CHECK(legendre(BigInt(x), ell) == -1);
                continue;
            }
            CHECK(static_cast<long>(*r) <= ell / 2);
            CHECK((static_cast<long>(*r) * static_cast<long>(*r)) % ell == x % ell);
        }
    }
}

TEST_CASE("count_roots_modp") {
    CHECK(count_roots_modp(c1_poly(), 7) == 2);  // t = 1, 6
    CHECK(count_roots_modp(c1_poly(), 5) == 0);
    CHECK(count_roots_modp(up({-1, 1}), 101) == 1);
    CHECK_THROWS_AS(count_roots_modp(up({7, 7}), 7), std::invalid_argument);
}

TEST_CASE("r formula for the (2,3) family matches the exhaustive count") {
    CHECK(r_formula_F1(7) == 2);
    CHECK(r_formula_F1(5) == 0);
    CHECK_THROWS_AS(r_formula_F1(3), std::invalid_argument);
    for (long ell : primes_upto(999)) {
        if (ell < 5) continue;
        const long r = r_formula_F1(ell);
        CHECK(r == count_roots_modp(c1_poly(), ell));
        CHECK(r <= 4);
    }
}

TEST_CASE("hensel lifting of simple roots") {
    CHECK(hensel_lift_count(c1_poly(), 7, 4) == 2);
    CHECK(hensel_lift_count(up({-1, 0, 1}), 5, 3) == 2);
    CHECK_THROWS_AS(hensel_lift_count(up({0, 0, 1}), 5, 2), std::domain_error);  // t^2
    // count independent of the exponent for squarefree-mod-l inputs
    for (int k = 1; k <= 6; ++k) CHECK(hensel_lift_count(c1_poly(), 11, k) ==
                                       count_roots_modp(c1_poly(), 11));
}

TEST_CASE("F1 exceptional densities from the defining scan") {
    FamilySpec f = builtin("F1");
    DensityScanDetail det;
    DensityValue d2 = density_def(f, 2, DefMode::FullScan, 0, &det);
    CHECK(d2.value == rat(1, 2));
    CHECK(det.total == 4096);
    CHECK(det.excluded_total == 2048);
    CHECK(det.excluded_by_class[0] == 0);     // (odd, odd)
    CHECK(det.excluded_by_class[1] == 0);     // (odd, even)
    CHECK(det.excluded_by_class[2] == 1024);  // (even, odd): the whole class
    CHECK(det.excluded_by_class[3] == 1024);  // both even

    DensityValue d3 = density_def(f, 3, DefMode::FullScan, 0, &det);
    CHECK(d3.value == rat(2, 3));
    CHECK(det.total == 531441);
    CHECK(det.excluded_total == 177147);
    CHECK(det.excluded_by_class[0] == 0);
    CHECK(det.excluded_by_class[1] == 0);
    CHECK(det.excluded_by_class[2] == 118098);
    CHECK(det.excluded_by_class[3] == 59049);
}

TEST_CASE("structured count equals the full scan wherever both run") {
    for (const char* name : {"F1", "F2"}) {
        FamilySpec f = builtin(name);
        for (long ell : {2L, 3L, 5L}) {
            DensityScanDetail full_det, str_det;
            DensityValue full = density_def(f, ell, DefMode::FullScan, 0, &full_det);
            DensityValue structured = density_def(f, ell, DefMode::Structured, 0, &str_det);
            CHECK(full.value == structured.value);
            for (int c = 0; c < 4; ++c)
                CHECK(full_det.excluded_by_class[static_cast<size_t>(c)] ==
                      str_det.excluded_by_class[static_cast<size_t>(c)]);
        }
    }
}

TEST_CASE("triple density agreement at l = 7") {
    for (const char* name : {"F1", "F2"}) {
        FamilySpec f = builtin(name);
        DensityValue a = density_def(f, 7, DefMode::Structured);
        DensityValue b = density_via_C(f, 7);
        DensityValue c = density_closed(f, 7);
        CHECK(a.value == b.value);
        CHECK(b.value == c.value);
    }
}

TEST_CASE("closed-form densities for F1") {
    FamilySpec f = builtin("F1");
    CHECK(density_closed(f, 2).value == rat(1, 2));
    CHECK(density_closed(f, 2).method == "paper-table");
    CHECK(density_closed(f, 3).value == rat(2, 3));
    // d_7 = 1 - 1/49 - 12/16807
    CHECK(density_closed(f, 7).value == Rational(1) - rat(1, 49) - rat(12, 16807));
    // d_5 = 1 - 1/25 since r_5 = 0
    CHECK(density_closed(f, 5).value == Rational(1) - rat(1, 25));
}

TEST_CASE("density values stay in (0, 1) and closed form is sane") {
    FamilySpec f = builtin("F2");
    for (long ell : primes_upto(200)) {
        DensityValue dv = density_closed(f, ell);
        CHECK(dv.value > 0);
        CHECK(dv.value < 1);
    }
}

TEST_CASE("membership lemma: minimality failure is C-divisibility off Sigma") {
    FamilySpec f = builtin("F1");
    const long ell = 7;
    const BigInt l4 = ipow(BigInt(ell), 4), l6 = ipow(BigInt(ell), 6);
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        BigInt a(test::rand_int(0, 117648)), b(test::rand_int(0, 117648));
        if (a % ell == 0 && b % ell == 0) continue;
        const bool min_fail =
            divides(l4, eval_homo(f.A, a, b)) && divides(l6, eval_homo(f.B, a, b));
        const bool c_div = divides(l4, eval_homo(f.C, a, b));
        CHECK(min_fail == c_div);
        ++checked;
    }
    CHECK(checked > 9000);
}

TEST_CASE("euler product bracket") {
    FamilySpec f = builtin("F1");
    EulerBracket at3 = euler_product(f, 3);
    CHECK(at3.partial == rat(1, 3));  // d_2 d_3 = 1/2 * 2/3
    CHECK(at3.upper == at3.partial);
    CHECK(at3.lower > 0);
    CHECK(at3.lower < at3.partial);

    EulerBracket at100 = euler_product(f, 100);
    EulerBracket at1000 = euler_product(f, 1000);
    CHECK(at1000.partial <= at100.partial);  // factors below 1
    CHECK(at1000.upper - at1000.lower < at100.upper - at100.lower);
    // nesting: the true product lies in every bracket
    CHECK(at1000.partial >= at100.lower);
    CHECK(at1000.partial <= at100.upper);

    CHECK_THROWS_AS(euler_product(f, 2), std::invalid_argument);  // below max Sigma
}

TEST_CASE("euler product sources agree") {
    FamilySpec f = builtin("F1");
    EulerBracket closed = euler_product(f, 11, DensitySource::Closed);
    EulerBracket def = euler_product(f, 11, DensitySource::DefScan);
    EulerBracket viac = euler_product(f, 11, DensitySource::ViaC);
    CHECK(closed.partial == def.partial);
    CHECK(closed.partial == viac.partial);
}

TEST_CASE("golden cache round trip") {
    // isolated cache directory
    const auto dir = std::filesystem::temp_directory_path() / "entangle-test-golden";
    std::filesystem::remove_all(dir);
    setenv("ENTANGLE_CACHE_DIR", dir.c_str(), 1);

    CHECK_FALSE(golden_lookup("F9", 7).has_value());
    DensityValue dv;
    dv.prime = 7;
    dv.method = "structured";
    dv.modulus_exponent = 6;
    dv.value = rat(3, 7);
    golden_store("F9", dv);
    auto back = golden_lookup("F9", 7);
    REQUIRE(back.has_value());
    CHECK(back->value == rat(3, 7));
    CHECK(back->method == "structured");
    std::filesystem::remove_all(dir);
    unsetenv("ENTANGLE_CACHE_DIR");
}

TEST_CASE("density json shape") {
    FamilySpec f = builtin("F1");
    std::string j = density_to_json("F1", density_closed(f, 2));
    CHECK(j.find("\"num\":\"1\"") != std::string::npos);
    CHECK(j.find("\"den\":\"2\"") != std::string::npos);
    CHECK(j.find("\"ell\":2") != std::string::npos);
}
