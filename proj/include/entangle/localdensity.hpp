#ifndef ENTANGLE_LOCALDENSITY_HPP
#define ENTANGLE_LOCALDENSITY_HPP

#include <array>
#include <optional>
#include <string>

#include "entangle/family.hpp"

namespace entangle {

/* Exact local densities d_l: the proportion of residue pairs (a,b) mod l^6
 * surviving the coprimality condition (l does not divide both a and b) and
 * the minimality condition (not: l^4 | A(a,b) and l^6 | B(a,b)).
 *
 * Three independent routes are kept: the defining full scan over (Z/l^6)^2,
 * a structured count that Hensel-lifts roots of C and checks the valuation
 * conditions on the lifted fibers, and the closed form off the exceptional
 * set. They must agree exactly. */

struct DensityValue {
    long prime = 0;
    Rational value;      // in [0, 1]
    std::string method;  // def-mod-l6 | structured | via-C-mod-l4 | closed-form | paper-table
    int modulus_exponent = 0;
};

// Per-class exclusion tallies from a density computation. Classes are keyed
// by divisibility of (a, b) by l: 0 = (unit, unit), 1 = (unit, div),
// 2 = (div, unit), 3 = (div, div).
struct DensityScanDetail {
    std::array<BigInt, 4> excluded_by_class{BigInt(0), BigInt(0), BigInt(0), BigInt(0)};
    BigInt excluded_total = 0;
    BigInt total = 0;
};

// Legendre symbol (a / l) for odd prime l, by Euler's criterion.
int legendre(const BigInt& a, long ell);

// A square root of a mod odd prime l via Tonelli-Shanks; canonical choice in
// [0, l/2]. nullopt when a is a non-residue.
std::optional<unsigned long> sqrt_mod(const BigInt& a, long ell);

// Number of t in Z/l with p(t) = 0, exhaustive scan; requires p nonzero mod l
// and l < 2^20.
long count_roots_modp(const UniPoly& p, long ell);

// Closed form for the root count of t^4 + 36t^2 + 432 mod l, l not dividing 6,
// from the Legendre symbols of the roots of u^2 + 36u + 432.
long r_formula_F1(long ell);

// Number of roots of p mod l^k. All roots of p mod l must be simple; each
// then lifts uniquely (Newton), so the count equals count_roots_modp.
long hensel_lift_count(const UniPoly& p, long ell, int k);

enum class DefMode { Auto, FullScan, Structured };

// d_l from the defining congruence count mod l^6. FullScan enumerates all
// l^12 pairs (l <= 5); Structured counts the excluded set as the union of the
// (div, div) block with the Hensel-lifted root fibers of C, exact for any l
// with l^6 < 2^63. Auto picks Structured.
DensityValue density_def(const FamilySpec& spec, long ell, DefMode mode = DefMode::Auto,
                         int threads = 0, DensityScanDetail* detail = nullptr);

// d_l for l outside Sigma from the full scan of C(a,b) = 0 mod l^4 over
// (Z/l^4)^2.
DensityValue density_via_C(const FamilySpec& spec, long ell, int threads = 0);

// d_l = 1 - 1/l^2 - r_l (l-1) / l^5 off Sigma, with r_l the number of
// projective roots of C mod l. On Sigma: F1 uses the known exact values;
// other families fall back to the structured count (golden-cached).
DensityValue density_closed(const FamilySpec& spec, long ell);

struct EulerBracket {
    long z = 0;
    Rational partial;  // exact prod_{l <= z} d_l
    Rational lower;    // partial * (1 - T(z)), rigorous
    Rational upper;    // = partial, since every factor is <= 1
};

enum class DensitySource { Closed, DefScan, ViaC };

// Exact partial Euler product with a rigorous tail bracket. For l > z
// (all outside Sigma once z >= max Sigma), 1 - d_l <= 1/l^2 + r/l^4, and
// summing over integers n > z gives T(z) = 1/z + r/(3 z^3) by the integral
// bound; the Weierstrass inequality turns this into a lower bound for the
// tail product. Requires z >= max(Sigma) and T(z) < 1.
EulerBracket euler_product(const FamilySpec& spec, long z,
                           DensitySource source = DensitySource::Closed, int threads = 0);

// Golden density cache keyed by (family name, l), stored as JSON under the
// cache directory (ENTANGLE_CACHE_DIR overrides the default location).
std::string cache_directory();
std::optional<DensityValue> golden_lookup(const std::string& family, long ell);
void golden_store(const std::string& family, const DensityValue& dv);

std::string density_to_json(const std::string& family, const DensityValue& dv);

}  // namespace entangle

#endif
