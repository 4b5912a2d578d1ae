#ifndef ENTANGLE_BIGINT_HPP
#define ENTANGLE_BIGINT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace entangle {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses a decimal integer with optional leading '-'. External formats carry
// big integers as decimal strings, so this is strict: no whitespace, no hex.
inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer string");
    const std::string digits = (s[0] == '-') ? s.substr(1) : s;
    if (digits.empty()) throw std::invalid_argument("bad integer string: " + s);
    for (char c : digits)
        if (c < '0' || c > '9') throw std::invalid_argument("bad integer string: " + s);
    return BigInt(s, 10);
}

inline std::string dec(const BigInt& n) { return n.get_str(10); }

inline BigInt ipow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// floor(|n|^{1/k})
inline BigInt iroot(const BigInt& n, unsigned long k) {
    BigInt r, a = abs(n);
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
    return r;
}

// v_p(n) for n != 0
inline unsigned long valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    BigInt rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

inline bool divides(const BigInt& d, const BigInt& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline long to_long_checked(const BigInt& n) {
    if (!n.fits_slong_p()) throw std::overflow_error("integer too large: " + dec(n));
    return n.get_si();
}

}  // namespace entangle

#endif
