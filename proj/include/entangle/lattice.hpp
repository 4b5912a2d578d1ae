#ifndef ENTANGLE_LATTICE_HPP
#define ENTANGLE_LATTICE_HPP

#include <iosfwd>
#include <vector>

#include "entangle/family.hpp"

namespace entangle {

/* Exact enumeration of the height-bounded sets F(X) (all pairs (a,b), b > 0,
 * H(a,b) <= X), the sieved sets D^z(X), and the minimal-curve set C(X). */

struct CurveRecord {
    long a = 0;
    long b = 0;  // > 0
    BigInt Aval, Bval;
    BigInt H;          // max(|4 A^3|, |27 B^2|)
    unsigned long md = 1;  // minimality defect; 0 only for the (A,B)=(0,0) degeneracy
    bool coprime = false;
    bool nonsingular = false;

    bool in_C() const { return coprime && nonsingular && md == 1; }
};

struct CountSummary {
    BigInt X;
    size_t count_F = 0;
    size_t count_Dz = 0;  // pairs passing the congruence sieve at all primes <= z
    size_t count_C = 0;
    size_t distinct_models = 0;  // distinct (A,B) among members of C(X)
};

// max(|4 A(a,b)^3|, |27 B(a,b)^2|), exact.
BigInt height_H(const FamilySpec& spec, const BigInt& a, const BigInt& b);

// Largest m with m^4 | A and m^6 | B; one-sided when exactly one of A, B is
// zero; (0, 0) is an error.
unsigned long minimality_defect(const BigInt& Aval, const BigInt& Bval);

// Test oracle: the same quantity by exhaustive scan over m.
unsigned long minimality_defect_scan(const BigInt& Aval, const BigInt& Bval);

// H(A,B) / md(A,B)^12, exact integer.
BigInt curve_height(const BigInt& Aval, const BigInt& Bval);

struct BoundingBox {
    long a_max = 0;
    long b_max = 0;
    double rho_u = 0;  // max |u| over the unit region R
    double rho_v = 0;  // max v over R
};

// A box guaranteed to contain F(X), from the polar radius of the unit region
// scaled by X^{1/d} and inflated by `margin`. Integer samples just outside the
// box are double-checked to have H > X.
BoundingBox bounding_box(const FamilySpec& spec, const BigInt& X, double margin = 0.01);

// All (a,b) with b >= 1 and H(a,b) <= X, sorted by (b, a), records fully
// populated. Deterministic for any thread count.
std::vector<CurveRecord> enumerate_F(const FamilySpec& spec, const BigInt& X, int threads = 0);

// The sub-stream of enumerate_F with gcd(a,b) = 1, nonzero discriminant, md = 1.
std::vector<CurveRecord> enumerate_C(const FamilySpec& spec, const BigInt& X, int threads = 0);

// Count of (a,b) in F(X) with, for every prime l <= z: l does not divide
// gcd(a,b), and not (l^4 | A and l^6 | B).
size_t count_Dz(const FamilySpec& spec, const BigInt& X, long z, int threads = 0);

// One-pass counts of F(X), D^z(X), C(X) and distinct models.
CountSummary count_scan(const FamilySpec& spec, const BigInt& X, long z, int threads = 0);

enum class RecordFormat { Jsonl, Csv };

// Writes records in enumeration order; big integers as decimal strings.
// Returns the number of rows written.
size_t write_records(const std::vector<CurveRecord>& records, std::ostream& sink,
                     RecordFormat format);

std::vector<CurveRecord> read_records(std::istream& source, RecordFormat format);

}  // namespace entangle

#endif
