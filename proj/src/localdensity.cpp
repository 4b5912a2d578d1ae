#include "entangle/localdensity.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>

#include "entangle/modarith.hpp"
#include "entangle/parallel.hpp"

namespace entangle {

namespace {

void require_odd_prime(long ell) {
    if (ell < 3 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("odd prime required, got " + std::to_string(ell));
}

uint64_t upow(uint64_t base, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::vector<uint64_t> reduce_coeffs(const UniPoly& p, uint64_t m) {
    std::vector<uint64_t> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), m));
    return out;
}

std::vector<uint64_t> reduce_coeffs(const HomogeneousPoly& P, uint64_t m) {
    std::vector<uint64_t> out;
    out.reserve(P.coeffs().size());
    for (const auto& c : P.coeffs()) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), m));
    return out;
}

uint64_t horner_mod(const std::vector<uint64_t>& asc, uint64_t x, uint64_t m) {
    uint64_t r = 0;
    for (size_t i = asc.size(); i-- > 0;)
        r = static_cast<uint64_t>((static_cast<unsigned __int128>(r) * x + asc[i]) % m);
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
    // extended Euclid; a must be a unit mod m
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a % m;
    while (newr != 0) {
        __int128 q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("not invertible");
    if (t < 0) t += m;
    return static_cast<uint64_t>(t);
}

}  // namespace

int legendre(const BigInt& a, long ell) {
    require_odd_prime(ell);
    const uint64_t l = static_cast<uint64_t>(ell);
    const uint64_t r = mpz_fdiv_ui(a.get_mpz_t(), l);
    if (r == 0) return 0;
    const uint64_t e = powmod(r, (l - 1) / 2, l);
    return e == 1 ? 1 : -1;
}

std::optional<unsigned long> sqrt_mod(const BigInt& a, long ell) {
    require_odd_prime(ell);
    const uint64_t l = static_cast<uint64_t>(ell);
    const uint64_t n = mpz_fdiv_ui(a.get_mpz_t(), l);
    if (n == 0) return 0;
    if (powmod(n, (l - 1) / 2, l) != 1) return std::nullopt;

    uint64_t root;
    if (l % 4 == 3) {
        root = powmod(n, (l + 1) / 4, l);
    } else {
        // Tonelli-Shanks
        uint64_t q = l - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        uint64_t z = 2;
        while (powmod(z, (l - 1) / 2, l) != l - 1) ++z;
        uint64_t m = static_cast<uint64_t>(s);
        uint64_t c = powmod(z, q, l);
        uint64_t t = powmod(n, q, l);
        root = powmod(n, (q + 1) / 2, l);
        while (t != 1) {
            uint64_t i = 0, tt = t;
            while (tt != 1) {
                tt = mulmod(tt, tt, l);
                ++i;
            }
            uint64_t b = powmod(c, 1ull << (m - i - 1), l);
            m = i;
            c = mulmod(b, b, l);
            t = mulmod(t, c, l);
            root = mulmod(root, b, l);
        }
    }
    return std::min(root, l - root);
}

long count_roots_modp(const UniPoly& p, long ell) {
    if (ell < 2 || ell >= (1 << 20) || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("count_roots_modp needs a prime below 2^20");
    const uint64_t l = static_cast<uint64_t>(ell);
    std::vector<uint64_t> cs = reduce_coeffs(p, l);
    if (std::all_of(cs.begin(), cs.end(), [](uint64_t c) { return c == 0; }))
        throw std::invalid_argument("polynomial vanishes identically mod " + std::to_string(ell));
    long count = 0;
    for (uint64_t t = 0; t < l; ++t)
        if (horner_mod(cs, t, l) == 0) ++count;
    return count;
}

long r_formula_F1(long ell) {
    if (ell == 2 || ell == 3) throw std::invalid_argument("r_formula_F1 needs l not dividing 6");
    require_odd_prime(ell);
    const uint64_t l = static_cast<uint64_t>(ell);
    const BigInt delta = -432;
    if (legendre(delta, ell) == -1) return 0;
    // u^2 + 36u + 432 splits; its roots are (-36 +- sqrt(delta)) / 2
    const uint64_t s = *sqrt_mod(delta, ell);
    const uint64_t half = inv_mod(2, l);
    const uint64_t m36 = l - (36 % l) % l;
    const uint64_t u1 = mulmod((m36 + s) % l, half, l);
    const uint64_t u2 = mulmod((m36 + l - s) % l, half, l);
    return 2 + legendre(BigInt(static_cast<unsigned long>(u1)), ell) +
           legendre(BigInt(static_cast<unsigned long>(u2)), ell);
}

long hensel_lift_count(const UniPoly& p, long ell, int k) {
    if (k < 1) throw std::invalid_argument("hensel_lift_count needs k >= 1");
    if (ell < 2 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("prime required");
    const uint64_t l = static_cast<uint64_t>(ell);
    std::vector<uint64_t> cs = reduce_coeffs(p, l);
    if (std::all_of(cs.begin(), cs.end(), [](uint64_t c) { return c == 0; }))
        throw std::invalid_argument("polynomial vanishes identically mod " + std::to_string(ell));
    std::vector<uint64_t> ds = reduce_coeffs(p.derivative(), l);

    const BigInt target = ipow(BigInt(ell), static_cast<unsigned long>(k));
    long count = 0;
    for (uint64_t t0 = 0; t0 < l; ++t0) {
        if (horner_mod(cs, t0, l) != 0) continue;
        if (horner_mod(ds, t0, l) == 0)
            throw std::domain_error("non-simple root mod " + std::to_string(ell) +
                                    " at t = " + std::to_string(t0));
        // Newton iteration, doubling precision up to l^k
        BigInt modulus(ell);
        BigInt t(static_cast<unsigned long>(t0));
        const UniPoly dp = p.derivative();
        while (modulus < target) {
            modulus = modulus * modulus;
            if (modulus > target) modulus = target;
            BigInt f = p.eval(t) % modulus;
            BigInt df = dp.eval(t) % modulus;
            BigInt inv;
            if (mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), modulus.get_mpz_t()) == 0)
                throw std::logic_error("derivative not invertible during lift");
            t = (t - f * inv) % modulus;
            if (t < 0) t += modulus;
        }
        if (p.eval(t) % target != 0) throw std::logic_error("Newton lift failed to converge");
        ++count;
    }
    return count;
}

namespace {

struct ChartPolys {
    // dehomogenizations reduced mod l^6 (coefficients ascending)
    std::vector<uint64_t> A, B, A0, C, Cd;
};

ChartPolys make_chart(const FamilySpec& spec, DehomSide side, uint64_t m6) {
    ChartPolys ch;
    ch.A = reduce_coeffs(dehomogenize(spec.A, side), m6);
    ch.B = reduce_coeffs(dehomogenize(spec.B, side), m6);
    ch.A0 = reduce_coeffs(dehomogenize(spec.A0, side), m6);
    UniPoly c = dehomogenize(spec.C, side);
    ch.C = reduce_coeffs(c, m6);
    ch.Cd = reduce_coeffs(c.derivative(), m6);
    return ch;
}

// Unique Newton lift of a simple root of C to Z/l^6.
uint64_t lift_simple_root(const ChartPolys& ch, uint64_t ell, uint64_t t0) {
    uint64_t t = t0;
    for (int prec : {2, 4, 6}) {
        const uint64_t m = upow(ell, prec);
        const uint64_t f = horner_mod(ch.C, t, m);
        const uint64_t df = horner_mod(ch.Cd, t, m);
        const uint64_t step = mulmod(f, inv_mod(df % m, m), m);
        t = (t + m - step) % m;
    }
    return t;
}

// Number of t in Z/l^6 over the residue t0 mod l with l^4 | A(t) and
// l^6 | B(t), where A, B are the chart dehomogenizations.
BigInt fiber_count(const ChartPolys& ch, uint64_t ell, uint64_t t0) {
    const uint64_t m4 = upow(ell, 4), m6 = upow(ell, 6);
    uint64_t cnt = 0;
    const bool simple_via_C =
        horner_mod(ch.A0, t0, ell) != 0 && horner_mod(ch.Cd, t0, ell) != 0;
    if (simple_via_C) {
        // v(A) = v(C) on this fiber, so the A-condition pins t to the unique
        // lifted root of C mod l^4; only the B-condition needs scanning.
        const uint64_t tstar = lift_simple_root(ch, ell, t0);
        const uint64_t l2 = ell * ell;
        for (uint64_t j = 0; j < l2; ++j) {
            const uint64_t t = (tstar + j * m4) % m6;
            if (horner_mod(ch.B, t, m6) == 0) ++cnt;
        }
    } else {
        const uint64_t l5 = upow(ell, 5);
        if (l5 > (1ull << 31))
            throw std::domain_error("structured fiber too large at l = " + std::to_string(ell));
        for (uint64_t j = 0; j < l5; ++j) {
            const uint64_t t = t0 + j * ell;
            if (horner_mod(ch.A, t, m6) % m4 != 0) continue;
            if (horner_mod(ch.B, t, m6) == 0) ++cnt;
        }
    }
    return BigInt(static_cast<unsigned long>(cnt));
}

DensityValue assemble_def(long ell, const BigInt& excluded, const std::string& method) {
    DensityValue dv;
    dv.prime = ell;
    dv.method = method;
    dv.modulus_exponent = 6;
    const BigInt total = ipow(BigInt(ell), 12);
    dv.value = make_rational(total - excluded, total);
    return dv;
}

DensityValue density_def_structured(const FamilySpec& spec, long ell, DensityScanDetail* detail) {
    if (ell < 2 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("prime required");
    if (ell > 1300) throw std::domain_error("structured path needs l^6 < 2^63");
    const uint64_t l = static_cast<uint64_t>(ell);
    const uint64_t m6 = upow(l, 6);
    const BigInt unit_count = ipow(BigInt(ell), 5) * (ell - 1);  // units mod l^6

    DensityScanDetail det;
    det.total = ipow(BigInt(ell), 12);
    det.excluded_by_class[3] = ipow(BigInt(ell), 10);  // the (div, div) block

    // chart l not dividing b: pairs (a, b) = (t b, b) with b a unit
    ChartPolys main_chart = make_chart(spec, DehomSide::SetV1, m6);
    for (uint64_t t0 = 0; t0 < l; ++t0) {
        if (horner_mod(main_chart.A, t0, m6) % l != 0) continue;
        if (horner_mod(main_chart.B, t0, m6) % l != 0) continue;
        BigInt fib = fiber_count(main_chart, l, t0) * unit_count;
        det.excluded_by_class[t0 == 0 ? 2 : 0] += fib;
    }

    // chart l | b, a a unit: pairs (a, s a); only s = 0 mod l is a candidate
    ChartPolys inf_chart = make_chart(spec, DehomSide::SetU1, m6);
    if (horner_mod(inf_chart.A, 0, m6) % l == 0 && horner_mod(inf_chart.B, 0, m6) % l == 0)
        det.excluded_by_class[1] += fiber_count(inf_chart, l, 0) * unit_count;

    det.excluded_total = det.excluded_by_class[0] + det.excluded_by_class[1] +
                         det.excluded_by_class[2] + det.excluded_by_class[3];
    if (detail) *detail = det;
    return assemble_def(ell, det.excluded_total, "structured");
}

DensityValue density_def_fullscan(const FamilySpec& spec, long ell, int threads,
                                  DensityScanDetail* detail) {
    if (ell < 2 || ell > 5 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("full l^12 scan is only enumerable for l <= 5");
    const uint64_t l = static_cast<uint64_t>(ell);
    const uint64_t m6 = upow(l, 6), m4 = upow(l, 4);
    const std::vector<uint64_t> ca = reduce_coeffs(spec.A, m6);
    const std::vector<uint64_t> cb = reduce_coeffs(spec.B, m6);
    const int degA = spec.A.degree(), degB = spec.B.degree();

    struct Tally {
        std::array<uint64_t, 4> by_class{0, 0, 0, 0};
    };
    auto tallies = run_chunked<Tally>(
        0, static_cast<long>(m6), resolve_threads(threads), [&](long alo, long ahi) {
            Tally tal;
            std::vector<uint64_t> powa(static_cast<size_t>(std::max(degA, degB)) + 1);
            std::vector<uint64_t> qa(static_cast<size_t>(degA) + 1);
            std::vector<uint64_t> qb(static_cast<size_t>(degB) + 1);
            for (long asn = alo; asn < ahi; ++asn) {
                const uint64_t a = static_cast<uint64_t>(asn);
                powa[0] = 1;
                for (size_t i = 1; i < powa.size(); ++i)
                    powa[i] = static_cast<uint64_t>(
                        (static_cast<unsigned __int128>(powa[i - 1]) * a) % m6);
                // A(a,b) as a polynomial in b: coefficient of b^{degA-i} is ca[i] a^i
                for (int i = 0; i <= degA; ++i)
                    qa[static_cast<size_t>(i)] = static_cast<uint64_t>(
                        (static_cast<unsigned __int128>(ca[static_cast<size_t>(i)]) *
                         powa[static_cast<size_t>(i)]) %
                        m6);
                for (int i = 0; i <= degB; ++i)
                    qb[static_cast<size_t>(i)] = static_cast<uint64_t>(
                        (static_cast<unsigned __int128>(cb[static_cast<size_t>(i)]) *
                         powa[static_cast<size_t>(i)]) %
                        m6);
                const bool adiv = (a % l == 0);
                for (uint64_t b = 0; b < m6; ++b) {
                    const bool bdiv = (b % l == 0);
                    const int cls = (adiv ? 2 : 0) + (bdiv ? 1 : 0);
                    if (adiv && bdiv) {
                        ++tal.by_class[3];
                        continue;
                    }
                    uint64_t av = 0;
                    for (int i = 0; i <= degA; ++i)
                        av = static_cast<uint64_t>(
                            (static_cast<unsigned __int128>(av) * b + qa[static_cast<size_t>(i)]) %
                            m6);
                    if (av % m4 != 0) continue;
                    uint64_t bv = 0;
                    for (int i = 0; i <= degB; ++i)
                        bv = static_cast<uint64_t>(
                            (static_cast<unsigned __int128>(bv) * b + qb[static_cast<size_t>(i)]) %
                            m6);
                    if (bv == 0) ++tal.by_class[cls];
                }
            }
            return tal;
        });

    DensityScanDetail det;
    det.total = ipow(BigInt(ell), 12);
    for (const auto& t : tallies)
        for (int c = 0; c < 4; ++c)
            det.excluded_by_class[static_cast<size_t>(c)] +=
                BigInt(static_cast<unsigned long>(t.by_class[static_cast<size_t>(c)]));
    det.excluded_total = det.excluded_by_class[0] + det.excluded_by_class[1] +
                         det.excluded_by_class[2] + det.excluded_by_class[3];
    if (detail) *detail = det;
    return assemble_def(ell, det.excluded_total, "def-mod-l6");
}

}  // namespace

DensityValue density_def(const FamilySpec& spec, long ell, DefMode mode, int threads,
                         DensityScanDetail* detail) {
    switch (mode) {
        case DefMode::FullScan:
            return density_def_fullscan(spec, ell, threads, detail);
        case DefMode::Structured:
        case DefMode::Auto:
            return density_def_structured(spec, ell, detail);
    }
    throw std::logic_error("unreachable");
}

DensityValue density_via_C(const FamilySpec& spec, long ell, int threads) {
    if (std::find(spec.sigma.begin(), spec.sigma.end(), ell) != spec.sigma.end())
        throw std::invalid_argument("density_via_C needs l outside Sigma");
    if (ell < 2 || ell >= (1 << 15) || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("prime required (and l^4 scan must be enumerable)");
    const uint64_t l = static_cast<uint64_t>(ell);
    const uint64_t m4 = upow(l, 4);
    const std::vector<uint64_t> cc = reduce_coeffs(spec.C, m4);
    const int degC = spec.C.degree();

    auto counts = run_chunked<uint64_t>(
        0, static_cast<long>(m4), resolve_threads(threads), [&](long alo, long ahi) {
            uint64_t cnt = 0;
            std::vector<uint64_t> powa(static_cast<size_t>(degC) + 1);
            std::vector<uint64_t> qc(static_cast<size_t>(degC) + 1);
            for (long asn = alo; asn < ahi; ++asn) {
                const uint64_t a = static_cast<uint64_t>(asn);
                powa[0] = 1;
                for (size_t i = 1; i < powa.size(); ++i)
                    powa[i] = static_cast<uint64_t>(
                        (static_cast<unsigned __int128>(powa[i - 1]) * a) % m4);
                for (int i = 0; i <= degC; ++i)
                    qc[static_cast<size_t>(i)] = static_cast<uint64_t>(
                        (static_cast<unsigned __int128>(cc[static_cast<size_t>(i)]) *
                         powa[static_cast<size_t>(i)]) %
                        m4);
                const bool adiv = (a % l == 0);
                for (uint64_t b = 0; b < m4; ++b) {
                    if (adiv && b % l == 0) continue;
                    uint64_t cv = 0;
                    for (int i = 0; i <= degC; ++i)
                        cv = static_cast<uint64_t>(
                            (static_cast<unsigned __int128>(cv) * b + qc[static_cast<size_t>(i)]) %
                            m4);
                    if (cv == 0) ++cnt;
                }
            }
            return cnt;
        });

    BigInt bad = 0;
    for (uint64_t c : counts) bad += BigInt(static_cast<unsigned long>(c));
    const BigInt l8 = ipow(BigInt(ell), 8), l6 = ipow(BigInt(ell), 6);
    DensityValue dv;
    dv.prime = ell;
    dv.method = "via-C-mod-l4";
    dv.modulus_exponent = 4;
    dv.value = make_rational(l8 - l6 - bad, l8);
    return dv;
}

DensityValue density_closed(const FamilySpec& spec, long ell) {
    if (ell < 2 || !is_prime_u64(static_cast<uint64_t>(ell)))
        throw std::invalid_argument("prime required");
    const bool in_sigma = std::find(spec.sigma.begin(), spec.sigma.end(), ell) != spec.sigma.end();
    if (!in_sigma) {
        long r = count_roots_modp(dehomogenize(spec.C, DehomSide::SetV1), ell);
        // root of C at (1 : 0) mod l; impossible for monic-in-u C
        if (mpz_fdiv_ui(eval_homo(spec.C, 1, 0).get_mpz_t(), static_cast<unsigned long>(ell)) == 0)
            ++r;
        const BigInt l5 = ipow(BigInt(ell), 5);
        DensityValue dv;
        dv.prime = ell;
        dv.method = "closed-form";
        dv.modulus_exponent = 3;
        dv.value = make_rational(l5 - ipow(BigInt(ell), 3) - BigInt(r) * (ell - 1), l5);
        return dv;
    }
    if (spec.name == "F1") {
        DensityValue dv;
        dv.prime = ell;
        dv.method = "paper-table";
        dv.modulus_exponent = 6;
        if (ell == 2)
            dv.value = Rational(1, 2);
        else if (ell == 3)
            dv.value = Rational(2, 3);
        else
            throw std::logic_error("unexpected Sigma prime for F1");
        return dv;
    }
    if (auto cached = golden_lookup(spec.name, ell)) return *cached;
    DensityValue dv = density_def(spec, ell, DefMode::Structured);
    golden_store(spec.name, dv);
    return dv;
}

EulerBracket euler_product(const FamilySpec& spec, long z, DensitySource source, int threads) {
    if (!spec.sigma.empty() && z < spec.sigma.back())
        throw std::invalid_argument("cutoff z must be at least max(Sigma)");
    if (z < 2) throw std::invalid_argument("cutoff z must be at least 2");

    Rational partial(1);
    for (long ell : primes_upto(z)) {
        DensityValue dv;
        const bool in_sigma =
            std::find(spec.sigma.begin(), spec.sigma.end(), ell) != spec.sigma.end();
        switch (source) {
            case DensitySource::Closed:
                dv = density_closed(spec, ell);
                break;
            case DensitySource::DefScan:
                dv = density_def(spec, ell, DefMode::Auto, threads);
                break;
            case DensitySource::ViaC:
                dv = in_sigma ? density_closed(spec, ell) : density_via_C(spec, ell, threads);
                break;
        }
        partial *= dv.value;
    }

    // Tail: for every prime l > z, 1 - d_l = 1/l^2 + r_l (l-1)/l^5 with
    // r_l <= r, so 1 - d_l <= 1/l^2 + r/l^4. Summing over all integers n > z,
    //   sum 1/n^2 <= 1/z  and  sum r/n^4 <= r/(3 z^3)
    // by comparison with the integral, and prod (1 - x_i) >= 1 - sum x_i.
    const BigInt zb(z);
    Rational tail = make_rational(1, zb) + make_rational(spec.r, 3 * zb * zb * zb);
    if (tail >= 1)
        throw std::domain_error("cutoff too small for a positive lower bound");

    EulerBracket br;
    br.z = z;
    br.partial = partial;
    br.upper = partial;
    br.lower = partial * (Rational(1) - tail);
    return br;
}

namespace {

std::mutex cache_mutex;

std::filesystem::path densities_file() {
    return std::filesystem::path(cache_directory()) / "densities.json";
}

nlohmann::json load_goldens() {
    std::ifstream in(densities_file());
    if (!in) return nlohmann::json::object();
    nlohmann::json j;
    in >> j;
    return j;
}

}  // namespace

std::string cache_directory() {
    std::filesystem::path dir;
    if (const char* env = std::getenv("ENTANGLE_CACHE_DIR")) {
        dir = env;
    } else if (const char* xdg = std::getenv("XDG_CACHE_HOME")) {
        dir = std::filesystem::path(xdg) / "entangle-census";
    } else if (const char* home = std::getenv("HOME")) {
        dir = std::filesystem::path(home) / ".cache" / "entangle-census";
    } else {
        dir = ".entangle-cache";
    }
    std::filesystem::create_directories(dir);
    return dir.string();
}

std::optional<DensityValue> golden_lookup(const std::string& family, long ell) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    nlohmann::json j = load_goldens();
    const std::string key = family + ":" + std::to_string(ell);
    if (!j.contains(key)) return std::nullopt;
    const auto& e = j.at(key);
    DensityValue dv;
    dv.prime = ell;
    dv.method = e.value("method", "structured");
    dv.modulus_exponent = e.value("modulus_exponent", 6);
    dv.value = make_rational(parse_bigint(e.at("num").get<std::string>()),
                             parse_bigint(e.at("den").get<std::string>()));
    return dv;
}

void golden_store(const std::string& family, const DensityValue& dv) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    nlohmann::json j = load_goldens();
    const std::string key = family + ":" + std::to_string(dv.prime);
    nlohmann::json e;
    e["num"] = dec(BigInt(dv.value.get_num()));
    e["den"] = dec(BigInt(dv.value.get_den()));
    e["method"] = dv.method;
    e["modulus_exponent"] = dv.modulus_exponent;
    e["provenance"] = "derived-by-scan";
    j[key] = e;

    const auto path = densities_file();
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::string density_to_json(const std::string& family, const DensityValue& dv) {
    nlohmann::json j;
    j["family"] = family;
    j["ell"] = dv.prime;
    j["method"] = dv.method;
    j["value"] = {{"num", dec(BigInt(dv.value.get_num()))},
                  {"den", dec(BigInt(dv.value.get_den()))}};
    return j.dump();
}

}  // namespace entangle
