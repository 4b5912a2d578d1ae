#ifndef ENTANGLE_TEST_SUPPORT_HPP
#define ENTANGLE_TEST_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "entangle/family.hpp"
#include "entangle/poly.hpp"

namespace entangle::test {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234abcdull);
    return gen;
}

inline long rand_int(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(rng());
}

inline UniPoly random_unipoly(int max_degree, long coeff_bound) {
    const int deg = static_cast<int>(rand_int(0, max_degree));
    std::vector<BigInt> cs;
    for (int i = 0; i <= deg; ++i) cs.emplace_back(rand_int(-coeff_bound, coeff_bound));
    if (cs.back() == 0) cs.back() = 1;
    return UniPoly(std::move(cs));
}

inline HomogeneousPoly random_homopoly(int max_degree, long coeff_bound) {
    const int deg = static_cast<int>(rand_int(0, max_degree));
    std::vector<BigInt> cs;
    bool nonzero = false;
    for (int i = 0; i <= deg; ++i) {
        cs.emplace_back(rand_int(-coeff_bound, coeff_bound));
        nonzero = nonzero || cs.back() != 0;
    }
    if (!nonzero) cs[0] = 1;
    return HomogeneousPoly(deg, std::move(cs));
}

// Polynomial with prescribed distinct integer roots times definite quadratic
// factors; the exact real root count is known by construction.
struct PlantedPoly {
    UniPoly poly;
    int real_roots;
};

inline PlantedPoly planted_poly(int max_linear, int max_quadratic) {
    std::vector<long> roots;
    const int nlin = static_cast<int>(rand_int(0, max_linear));
    while (static_cast<int>(roots.size()) < nlin) {
        long r = rand_int(-9, 9);
        bool dup = false;
        for (long s : roots) dup = dup || s == r;
        if (!dup) roots.push_back(r);
    }
    UniPoly p = UniPoly::constant(1);
    for (long r : roots) p = mul(p, UniPoly({BigInt(-r), BigInt(1)}));
    const int nquad = static_cast<int>(rand_int(0, max_quadratic));
    std::vector<std::pair<long, long>> used;
    for (int i = 0; i < nquad; ++i) {
        long b, c;
        do {
            b = rand_int(-4, 4);
            c = rand_int(b * b / 4 + 1, b * b / 4 + 9);  // b^2 - 4c < 0
        } while (std::find(used.begin(), used.end(), std::make_pair(b, c)) != used.end());
        used.push_back({b, c});
        p = mul(p, UniPoly({BigInt(c), BigInt(b), BigInt(1)}));
    }
    return {p, static_cast<int>(roots.size())};
}

// Real root count for polynomials whose real roots are integers in [-9, 9]:
// sign changes across half-integer sample points.
inline int bisection_root_count(const UniPoly& p) {
    int count = 0;
    BigInt prev = 0;
    for (long k = -19; k <= 19; k += 2) {  // t = k/2
        // sign of p(k/2) = sign of sum c_i k^i 2^{deg-i}
        BigInt v = 0;
        const int deg = p.degree();
        for (int i = 0; i <= deg; ++i)
            v += p.coeff(static_cast<size_t>(i)) * ipow(BigInt(k), static_cast<unsigned long>(i)) *
                 ipow(BigInt(2), static_cast<unsigned long>(deg - i));
        if (prev != 0 && ((prev < 0 && v > 0) || (prev > 0 && v < 0))) ++count;
        if (v != 0) prev = v;
    }
    return count;
}

}  // namespace entangle::test

#endif
