#include "entangle/family.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "entangle/modarith.hpp"

namespace entangle {

namespace {

std::string issues_to_message(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    os << "family validation failed:";
    for (const auto& is : issues) os << " (" << is.condition << ") " << is.detail << ";";
    return os.str();
}

// Prime divisors of |n|: trial division, then Miller-Rabin plus Pollard-Brent
// rho for any oversized cofactor. The witnesses are resultants of low-degree
// polynomials, so rho is a rarely-taken safety net.
void pollard_split(const BigInt& n, std::set<BigInt>& out);

void collect_prime_divisors(BigInt n, std::set<BigInt>& out) {
    n = abs(n);
    if (n <= 1) return;
    for (long p = 2; p < 1000000 && BigInt(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            out.insert(BigInt(p));
            while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)))
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.insert(n);
        return;
    }
    pollard_split(n, out);
}

void pollard_split(const BigInt& n, std::set<BigInt>& out) {
    // Brent's cycle variant; n is odd, composite, with no factor < 10^6.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEUL);
    for (;;) {
        BigInt y = rng.get_z_range(n - 3) + 2;
        BigInt c = rng.get_z_range(n - 3) + 1;
        BigInt x, d = 1, q = 1, ys = y;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && d == 1; k += batch) {
                ys = y;
                for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                BigInt diff = abs(x - ys);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n) {
            collect_prime_divisors(d, out);
            collect_prime_divisors(n / d, out);
            return;
        }
    }
}

bool has_real_projective_root(const HomogeneousPoly& C) {
    if (C.is_zero()) return true;
    if (C.degree() == 0) return false;
    if (eval_homo(C, 1, 0) == 0) return true;  // root at (1 : 0)
    return count_real_roots(squarefree_part(dehomogenize(C, DehomSide::SetV1))) > 0;
}

HomogeneousPoly poly_from_json(const nlohmann::json& j, const std::string& field) {
    if (!j.contains("degree") || !j.contains("coeffs"))
        throw std::invalid_argument("config: \"" + field + "\" needs degree and coeffs");
    const int degree = j.at("degree").get<int>();
    std::vector<BigInt> cs;
    for (const auto& c : j.at("coeffs")) {
        if (c.is_string())
            cs.push_back(parse_bigint(c.get<std::string>()));
        else
            cs.push_back(BigInt(c.get<long>()));
    }
    if (static_cast<int>(cs.size()) != degree + 1)
        throw std::invalid_argument("config: \"" + field + "\" needs degree+1 coefficients");
    return HomogeneousPoly(degree, std::move(cs));
}

nlohmann::json poly_to_json(const HomogeneousPoly& P) {
    nlohmann::json j;
    j["degree"] = P.degree();
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const auto& c : P.coeffs()) arr.push_back(dec(c));
    return j;
}

}  // namespace

FamilyValidationError::FamilyValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(issues_to_message(issues)), issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate_family(const HomogeneousPoly& A, const HomogeneousPoly& B) {
    std::vector<ValidationIssue> issues;

    const bool a_ok = !A.is_zero() && A.degree() >= 1;
    const bool b_ok = !B.is_zero() && B.degree() >= 1;
    if (!a_ok || !b_ok) {
        issues.push_back({"i", "A and B must be nonconstant"});
        return issues;
    }
    if (3 * A.degree() != 2 * B.degree())
        issues.push_back({"i", "3 deg A != 2 deg B (" + std::to_string(3 * A.degree()) + " vs " +
                                   std::to_string(2 * B.degree()) + ")"});

    HomogeneousPoly C = gcd_homo(A, B);

    if (has_real_projective_root(C))
        issues.push_back({"ii", "A and B share a real projective root (via C = gcd)"});

    if (3 * A.degree() == 2 * B.degree()) {
        HomogeneousPoly disc = add(scale(pow(A, 3), 4), scale(pow(B, 2), 27));
        if (disc.is_zero()) issues.push_back({"iii", "4A^3 + 27B^2 is identically zero"});
    }

    if (C.degree() < 1) {
        issues.push_back({"iv", "C = gcd(A, B) is constant"});
    } else {
        if (eval_homo(C, 0, 1) == 0) issues.push_back({"iv", "C is divisible by u"});
        if (eval_homo(C, 1, 0) == 0) issues.push_back({"iv", "C is divisible by v"});
        if (C.upower() <= 1 && C.vpower() <= 1) {
            UniPoly core = dehomogenize(C, DehomSide::SetV1);
            if (!core.is_zero() && core.degree() >= 1 && !is_squarefree(core))
                issues.push_back({"iv", "C is not squarefree"});
        } else {
            issues.push_back({"iv", "C is not squarefree"});
        }
        if (C.degree() > 4)
            issues.push_back({"iv", "deg C = " + std::to_string(C.degree()) + " exceeds 4"});
    }
    return issues;
}

std::pair<std::vector<long>, std::array<BigInt, 4>> compute_sigma(const HomogeneousPoly& A0,
                                                                  const HomogeneousPoly& B0,
                                                                  const HomogeneousPoly& C) {
    UniPoly ct = dehomogenize(C, DehomSide::SetV1);
    UniPoly cs = dehomogenize(C, DehomSide::SetU1);
    std::array<BigInt, 4> w = {
        resultant(dehomogenize(A0, DehomSide::SetV1), dehomogenize(B0, DehomSide::SetV1)),
        resultant(dehomogenize(A0, DehomSide::SetU1), dehomogenize(B0, DehomSide::SetU1)),
        resultant(ct, ct.derivative()),
        resultant(cs, cs.derivative()),
    };
    std::set<BigInt> primes;
    for (const auto& x : w) collect_prime_divisors(x, primes);
    std::vector<long> sigma;
    for (const auto& p : primes) sigma.push_back(to_long_checked(p));
    std::sort(sigma.begin(), sigma.end());
    return {sigma, w};
}

FamilySpec from_polys(std::string name, const HomogeneousPoly& A, const HomogeneousPoly& B,
                      std::optional<HomogeneousPoly> j_num, std::optional<HomogeneousPoly> j_den) {
    auto issues = validate_family(A, B);
    if (!issues.empty()) throw FamilyValidationError(std::move(issues));

    FamilySpec spec;
    spec.name = std::move(name);
    spec.A = A;
    spec.B = B;
    spec.C = gcd_homo(A, B);
    auto A0 = divide_exact(A, spec.C), B0 = divide_exact(B, spec.C);
    if (!A0 || !B0) throw std::logic_error("gcd does not divide inputs");  // unreachable
    spec.A0 = *A0;
    spec.B0 = *B0;
    spec.d = 3 * A.degree();
    spec.r = spec.C.degree();
    std::tie(spec.sigma, spec.sigma_witnesses) = compute_sigma(spec.A0, spec.B0, spec.C);

    // C is definite (no real projective roots) and gcd normalization makes it
    // positive at a sample point, hence nonnegative everywhere.
    if (eval_homo(spec.C, 1, 1) <= 0) throw std::logic_error("C not positive after normalization");

    if (j_num.has_value() != j_den.has_value())
        throw std::invalid_argument("j_num and j_den must be given together");
    if (j_num) {
        if (j_num->degree() != j_den->degree())
            throw std::invalid_argument("j-map must be homogeneous of degree 0");
        spec.j_num = std::move(j_num);
        spec.j_den = std::move(j_den);
    }
    return spec;
}

FamilySpec builtin(const std::string& name) {
    auto H = [](int d, std::vector<long> cs) {
        std::vector<BigInt> v(cs.begin(), cs.end());
        return HomogeneousPoly(d, std::move(v));
    };
    if (name == "F1") {
        HomogeneousPoly C = H(4, {432, 0, 36, 0, 1});
        HomogeneousPoly A0 = H(2, {-36, 0, -3});
        HomogeneousPoly B0 = mul(HomogeneousPoly::monomial(2, 1, 0), C);  // 2u * C
        HomogeneousPoly j_num = pow(H(2, {12, 0, 1}), 3);                 // (u^2 + 12v^2)^3
        HomogeneousPoly j_den = HomogeneousPoly::monomial(1, 0, 6);       // v^6
        FamilySpec spec = from_polys("F1", mul(C, A0), mul(C, B0), j_num, j_den);
        spec.entanglement = {2, 3, "Z/2Z"};
        return spec;
    }
    if (name == "F2") {
        HomogeneousPoly C = H(4, {125, 0, 22, 0, 1});
        HomogeneousPoly A0 = H(4, {-15, 0, -30, 0, -3});
        HomogeneousPoly B0 = scale(mul(H(4, {-1, 0, 4, 0, 1}), C), 2);  // 2(u^4+4u^2v^2-v^4) C
        HomogeneousPoly j_num = pow(H(4, {5, 0, 10, 0, 1}), 3);         // (u^4+10u^2v^2+5v^4)^3
        HomogeneousPoly j_den = HomogeneousPoly::monomial(1, 2, 10);    // u^2 v^10
        FamilySpec spec = from_polys("F2", mul(C, A0), mul(C, B0), j_num, j_den);
        spec.entanglement = {2, 5, "Z/2Z"};
        return spec;
    }
    throw std::invalid_argument("unknown builtin family: " + name);
}

FamilySpec from_config_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    std::string name = j.value("name", "config");
    HomogeneousPoly A = poly_from_json(j.at("A"), "A");
    HomogeneousPoly B = poly_from_json(j.at("B"), "B");
    std::optional<HomogeneousPoly> j_num, j_den;
    if (j.contains("j_num")) j_num = poly_from_json(j.at("j_num"), "j_num");
    if (j.contains("j_den")) j_den = poly_from_json(j.at("j_den"), "j_den");
    return from_polys(std::move(name), A, B, std::move(j_num), std::move(j_den));
}

std::string to_config_json(const FamilySpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["A"] = poly_to_json(spec.A);
    j["B"] = poly_to_json(spec.B);
    if (spec.j_num) {
        j["j_num"] = poly_to_json(*spec.j_num);
        j["j_den"] = poly_to_json(*spec.j_den);
    }
    return j.dump(2);
}

Rational jmap_value(const FamilySpec& spec, const BigInt& a, const BigInt& b) {
    if (!spec.j_num || !spec.j_den) throw std::invalid_argument("family has no stored j-map");
    BigInt den = eval_homo(*spec.j_den, a, b);
    if (den == 0)
        throw std::domain_error("j-map denominator vanishes at (" + dec(a) + ", " + dec(b) + ")");
    return make_rational(eval_homo(*spec.j_num, a, b), den);
}

Rational j_invariant(const BigInt& Aval, const BigInt& Bval) {
    BigInt a3 = 4 * Aval * Aval * Aval;
    BigInt disc = a3 + 27 * Bval * Bval;
    if (disc == 0) throw std::domain_error("singular curve: 4A^3 + 27B^2 = 0");
    return make_rational(1728 * a3, disc);
}

}  // namespace entangle
