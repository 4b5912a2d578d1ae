#ifndef ENTANGLE_FAMILY_HPP
#define ENTANGLE_FAMILY_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "entangle/poly.hpp"

namespace entangle {

/* A family y^2 = x^3 + A(a,b) x + B(a,b) of elliptic curves indexed by
 * integer pairs, with C = gcd(A, B), A = C*A0, B = C*B0. A validated
 * FamilySpec is immutable and safe to share across threads. */

struct EntanglementInfo {
    int a = 0, b = 0;        // the entangled torsion levels
    std::string type_label;  // e.g. "Z/2Z"; opaque metadata, never computed
};

struct ValidationIssue {
    std::string condition;  // "i", "ii", "iii", "iv"
    std::string detail;
};

class FamilyValidationError : public std::runtime_error {
  public:
    explicit FamilyValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

  private:
    std::vector<ValidationIssue> issues_;
};

struct FamilySpec {
    std::string name;
    HomogeneousPoly A, B;
    HomogeneousPoly C;       // gcd(A, B), normalized nonnegative on R^2
    HomogeneousPoly A0, B0;  // A = C*A0, B = C*B0, exact identities
    int d = 0;               // 3 deg A = 2 deg B
    int r = 0;               // deg C
    std::vector<long> sigma; // exceptional primes, sorted
    // the four integers whose prime divisors make up sigma:
    // Res(A0(t,1), B0(t,1)), Res(A0(1,t), B0(1,t)),
    // Res(C(t,1), C'(t,1)),  Res(C(1,t), C'(1,t))
    std::array<BigInt, 4> sigma_witnesses;
    std::optional<HomogeneousPoly> j_num, j_den;  // degree-0 homogeneous j-map
    EntanglementInfo entanglement;
};

// Structural validation: (i) 3 deg A = 2 deg B, (ii) no common real
// projective root, (iii) 4A^3 + 27B^2 not identically zero, (iv) C = gcd(A,B)
// nonconstant, squarefree, prime to u and v, deg C <= 4. Every violated
// condition is reported.
std::vector<ValidationIssue> validate_family(const HomogeneousPoly& A, const HomogeneousPoly& B);

// Builds and validates a spec from raw A, B; computes C, A0, B0, d, r, sigma.
// Throws FamilyValidationError listing each violated condition.
FamilySpec from_polys(std::string name, const HomogeneousPoly& A, const HomogeneousPoly& B,
                      std::optional<HomogeneousPoly> j_num = std::nullopt,
                      std::optional<HomogeneousPoly> j_den = std::nullopt);

// The built-in families; name is "F1" or "F2".
FamilySpec builtin(const std::string& name);

// Parses the family config JSON document (see README for the schema) and
// validates it like from_polys. Degrees, r, and sigma are always recomputed.
FamilySpec from_config_json(const std::string& json_text);
std::string to_config_json(const FamilySpec& spec);

// Primes dividing any of the four sigma witnesses. Returns (primes, witnesses).
std::pair<std::vector<long>, std::array<BigInt, 4>> compute_sigma(const HomogeneousPoly& A0,
                                                                  const HomogeneousPoly& B0,
                                                                  const HomogeneousPoly& C);

// j_num(a,b) / j_den(a,b) in lowest terms; requires a stored j-map and a
// nonvanishing denominator.
Rational jmap_value(const FamilySpec& spec, const BigInt& a, const BigInt& b);

// 1728 * 4A^3 / (4A^3 + 27B^2) for the curve y^2 = x^3 + Ax + B.
Rational j_invariant(const BigInt& Aval, const BigInt& Bval);

}  // namespace entangle

#endif
