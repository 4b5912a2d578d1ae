#ifndef ENTANGLE_POLY_HPP
#define ENTANGLE_POLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "entangle/bigint.hpp"

namespace entangle {

/* Exact arithmetic on integer polynomials: univariate Z[t] and homogeneous
 * bivariate Z[u,v]. Everything here is pure and allocation-cheap; degrees in
 * this project stay below ~30. */

// Univariate integer polynomial, coeffs[i] on t^i. Canonical form: the
// highest-index coefficient is nonzero; the zero polynomial has no coeffs.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigInt> coeffs);

    static UniPoly constant(BigInt c);

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& leading() const;
    BigInt coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    BigInt eval(const BigInt& x) const;
    UniPoly derivative() const;

    bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }
    std::string str() const;  // human-readable, for diagnostics

  private:
    std::vector<BigInt> coeffs_;
};

UniPoly add(const UniPoly& p, const UniPoly& q);
UniPoly sub(const UniPoly& p, const UniPoly& q);
UniPoly mul(const UniPoly& p, const UniPoly& q);
UniPoly neg(const UniPoly& p);

BigInt content(const UniPoly& p);          // gcd of coefficients, 0 for zero poly
UniPoly primitive_part(const UniPoly& p);  // p / content, sign preserved

// Primitive integer gcd computed by the Euclidean algorithm over Q.
// Normalized to positive leading coefficient. gcd(0,0) is an error.
UniPoly gcd_primitive(const UniPoly& p, const UniPoly& q);

// Sylvester-matrix determinant by Bareiss fraction-free elimination.
// Both arguments must be nonzero.
BigInt resultant(const UniPoly& p, const UniPoly& q);

// (-1)^{n(n-1)/2} * Res(p, p') / lc(p) for deg p = n >= 1.
BigInt discriminant(const UniPoly& p);

bool is_squarefree(const UniPoly& p);  // gcd(p, p') constant; p nonzero

UniPoly squarefree_part(const UniPoly& p);  // primitive p / gcd(p, p')

// Number of distinct real roots by Sturm sign-variation counting over
// (-inf, inf), exact rational arithmetic throughout. Requires p squarefree.
int count_real_roots(const UniPoly& p);

// Homogeneous bivariate integer polynomial of fixed degree n; coeffs[i] is
// the coefficient of u^i v^{n-i}. The zero polynomial is canonically the
// degree-0 polynomial with single coefficient 0.
class HomogeneousPoly {
  public:
    HomogeneousPoly();  // zero
    HomogeneousPoly(int degree, std::vector<BigInt> coeffs);

    static HomogeneousPoly constant(BigInt c);
    static HomogeneousPoly monomial(BigInt c, int upow, int vpow);

    bool is_zero() const;
    int degree() const { return degree_; }
    const BigInt& coeff(size_t upow) const { return coeffs_[upow]; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    // largest k with u^k | P (resp. v^k | P); degree() for the zero poly
    int upower() const;
    int vpower() const;

    bool operator==(const HomogeneousPoly& o) const {
        return degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }
    std::string str() const;

  private:
    int degree_ = 0;
    std::vector<BigInt> coeffs_;
};

enum class DehomSide { SetV1, SetU1 };

// Exact P(a,b) by Horner evaluation.
BigInt eval_homo(const HomogeneousPoly& P, const BigInt& a, const BigInt& b);

// P(t,1) (SetV1) or P(1,t) (SetU1), trimmed to canonical form.
UniPoly dehomogenize(const HomogeneousPoly& P, DehomSide side);

// Homogenize p to the given degree (>= deg p): u-degree taken from t-degree.
HomogeneousPoly homogenize(const UniPoly& p, int degree);

HomogeneousPoly add(const HomogeneousPoly& P, const HomogeneousPoly& Q);
HomogeneousPoly sub(const HomogeneousPoly& P, const HomogeneousPoly& Q);
HomogeneousPoly mul(const HomogeneousPoly& P, const HomogeneousPoly& Q);
HomogeneousPoly neg(const HomogeneousPoly& P);
HomogeneousPoly scale(const HomogeneousPoly& P, const BigInt& c);
HomogeneousPoly pow(const HomogeneousPoly& P, unsigned e);

// Primitive integer gcd of two homogeneous polynomials, common u-/v-power
// factors included. Sign normalization: value at (0,1) positive when nonzero
// there, otherwise positive leading (highest u-power) coefficient.
// Both-zero input is an error.
HomogeneousPoly gcd_homo(const HomogeneousPoly& P, const HomogeneousPoly& Q);

// Exact quotient P / Q when Q divides P in Z[u,v]; nullopt otherwise.
std::optional<HomogeneousPoly> divide_exact(const HomogeneousPoly& P, const HomogeneousPoly& Q);

}  // namespace entangle

#endif
