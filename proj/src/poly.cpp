#include "entangle/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace entangle {

namespace {

void trim(std::vector<BigInt>& cs) {
    while (!cs.empty() && cs.back() == 0) cs.pop_back();
}

int sign_of(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

}  // namespace

UniPoly::UniPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(coeffs_); }

UniPoly UniPoly::constant(BigInt c) {
    std::vector<BigInt> cs;
    if (c != 0) cs.push_back(std::move(c));
    return UniPoly(std::move(cs));
}

const BigInt& UniPoly::leading() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return coeffs_.back();
}

BigInt UniPoly::eval(const BigInt& x) const {
    BigInt r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
    return r;
}

UniPoly UniPoly::derivative() const {
    std::vector<BigInt> cs;
    for (size_t i = 1; i < coeffs_.size(); ++i) cs.push_back(BigInt(static_cast<long>(i)) * coeffs_[i]);
    return UniPoly(std::move(cs));
}

std::string UniPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << dec(coeffs_[i]);
        if (i > 0) os << "*t^" << i;
        first = false;
    }
    return os.str();
}

UniPoly add(const UniPoly& p, const UniPoly& q) {
    std::vector<BigInt> cs(std::max(p.coeffs().size(), q.coeffs().size()), BigInt(0));
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = p.coeff(i) + q.coeff(i);
    return UniPoly(std::move(cs));
}

UniPoly sub(const UniPoly& p, const UniPoly& q) {
    std::vector<BigInt> cs(std::max(p.coeffs().size(), q.coeffs().size()), BigInt(0));
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = p.coeff(i) - q.coeff(i);
    return UniPoly(std::move(cs));
}

UniPoly neg(const UniPoly& p) {
    std::vector<BigInt> cs = p.coeffs();
    for (auto& c : cs) c = -c;
    return UniPoly(std::move(cs));
}

UniPoly mul(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) return UniPoly();
    std::vector<BigInt> cs(p.coeffs().size() + q.coeffs().size() - 1, BigInt(0));
    for (size_t i = 0; i < p.coeffs().size(); ++i)
        for (size_t j = 0; j < q.coeffs().size(); ++j) cs[i + j] += p.coeffs()[i] * q.coeffs()[j];
    return UniPoly(std::move(cs));
}

BigInt content(const UniPoly& p) {
    BigInt g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

UniPoly primitive_part(const UniPoly& p) {
    if (p.is_zero()) return p;
    BigInt g = content(p);
    std::vector<BigInt> cs = p.coeffs();
    for (auto& c : cs) c /= g;
    return UniPoly(std::move(cs));
}

namespace {

// Rational-coefficient polynomial, used internally for Euclid and Sturm.
using QPoly = std::vector<Rational>;  // ascending, trailing nonzero

QPoly to_q(const UniPoly& p) {
    QPoly q;
    for (const auto& c : p.coeffs()) q.emplace_back(c);
    return q;
}

void trim_q(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// remainder of a by b (b nonzero), in place of a
QPoly rem_q(QPoly a, const QPoly& b) {
    while (a.size() >= b.size()) {
        Rational f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim_q(a);
        if (a.empty()) break;
    }
    return a;
}

UniPoly q_to_primitive(const QPoly& p) {
    if (p.empty()) return UniPoly();
    // common denominator, then strip integer content
    BigInt den = 1;
    for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<BigInt> cs;
    cs.reserve(p.size());
    for (const auto& c : p) cs.push_back(BigInt(c.get_num() * (den / c.get_den())));
    UniPoly r{std::move(cs)};
    return primitive_part(r);
}

}  // namespace

UniPoly gcd_primitive(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
    if (p.is_zero()) return q.leading() < 0 ? primitive_part(neg(q)) : primitive_part(q);
    if (q.is_zero()) return p.leading() < 0 ? primitive_part(neg(p)) : primitive_part(p);
    QPoly a = to_q(p), b = to_q(q);
    while (!b.empty()) {
        QPoly r = rem_q(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    UniPoly g = q_to_primitive(a);
    if (g.leading() < 0) g = neg(g);
    return g;
}

BigInt resultant(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    const int m = p.degree(), n = q.degree();
    const int N = m + n;
    if (N == 0) return 1;

    // Sylvester matrix, rows of p-shifts then q-shifts, descending coefficients.
    std::vector<std::vector<BigInt>> M(static_cast<size_t>(N), std::vector<BigInt>(static_cast<size_t>(N), BigInt(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) M[r][r + j] = p.coeff(static_cast<size_t>(m - j));
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) M[n + r][r + j] = q.coeff(static_cast<size_t>(n - j));

    // Bareiss fraction-free elimination with row pivoting.
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < N; ++r)
                if (M[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                BigInt t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[N - 1][N - 1] : BigInt(-M[N - 1][N - 1]);
}

BigInt discriminant(const UniPoly& p) {
    const int n = p.degree();
    if (n < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    BigInt res = resultant(p, p.derivative());
    BigInt d;
    mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) d = -d;
    return d;
}

bool is_squarefree(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefreeness of zero polynomial");
    if (p.degree() == 0) return true;
    return gcd_primitive(p, p.derivative()).degree() == 0;
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree part of zero polynomial");
    if (p.degree() == 0) return UniPoly::constant(1);
    UniPoly g = gcd_primitive(p, p.derivative());
    if (g.degree() == 0) return primitive_part(p.leading() < 0 ? neg(p) : p);
    QPoly num = to_q(p), den = to_q(g);
    QPoly quot(num.size() - den.size() + 1, Rational(0));
    while (num.size() >= den.size()) {
        Rational f = num.back() / den.back();
        quot[num.size() - den.size()] = f;
        size_t shift = num.size() - den.size();
        for (size_t i = 0; i < den.size(); ++i) num[i + shift] -= f * den[i];
        num.pop_back();
        trim_q(num);
        if (num.empty()) break;
    }
    UniPoly sf = q_to_primitive(quot);
    return sf.leading() < 0 ? neg(sf) : sf;
}

int count_real_roots(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("root count of zero polynomial");
    if (!is_squarefree(p)) throw std::invalid_argument("count_real_roots requires squarefree input");
    if (p.degree() == 0) return 0;

    // Sturm chain s0 = p, s1 = p', s_{i+1} = -rem(s_{i-1}, s_i)
    std::vector<QPoly> chain;
    chain.push_back(to_q(p));
    chain.push_back(to_q(p.derivative()));
    while (!chain.back().empty()) {
        QPoly r = rem_q(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    chain.pop_back();

    // sign variations at -inf and +inf from leading terms
    auto variations = [&chain](bool at_minus_inf) {
        int count = 0, last = 0;
        for (const auto& s : chain) {
            int sg = sign_of(s.back());
            if (at_minus_inf && (s.size() - 1) % 2 != 0) sg = -sg;
            if (sg != 0) {
                if (last != 0 && sg != last) ++count;
                last = sg;
            }
        }
        return count;
    };
    return variations(true) - variations(false);
}

HomogeneousPoly::HomogeneousPoly() : degree_(0), coeffs_{BigInt(0)} {}

HomogeneousPoly::HomogeneousPoly(int degree, std::vector<BigInt> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree_ < 0 || coeffs_.size() != static_cast<size_t>(degree_) + 1)
        throw std::invalid_argument("homogeneous polynomial needs degree+1 coefficients");
    if (is_zero() && degree_ != 0) {
        degree_ = 0;
        coeffs_ = {BigInt(0)};
    }
}

HomogeneousPoly HomogeneousPoly::constant(BigInt c) { return HomogeneousPoly(0, {std::move(c)}); }

HomogeneousPoly HomogeneousPoly::monomial(BigInt c, int upow, int vpow) {
    std::vector<BigInt> cs(static_cast<size_t>(upow + vpow) + 1, BigInt(0));
    cs[static_cast<size_t>(upow)] = std::move(c);
    return HomogeneousPoly(upow + vpow, std::move(cs));
}

bool HomogeneousPoly::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

int HomogeneousPoly::upower() const {
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return static_cast<int>(i);
    return degree_;
}

int HomogeneousPoly::vpower() const {
    for (size_t i = coeffs_.size(); i-- > 0;)
        if (coeffs_[i] != 0) return degree_ - static_cast<int>(i);
    return degree_;
}

std::string HomogeneousPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << dec(coeffs_[i]);
        if (i > 0) os << "*u^" << i;
        if (i < static_cast<size_t>(degree_)) os << "*v^" << (degree_ - static_cast<int>(i));
        first = false;
    }
    return os.str();
}

BigInt eval_homo(const HomogeneousPoly& P, const BigInt& a, const BigInt& b) {
    // r accumulates sum c_i a^i b^{n-i} going from high u-powers down,
    // picking up one factor of b per step.
    BigInt r = 0;
    for (size_t i = P.coeffs().size(); i-- > 0;) {
        r = r * a + P.coeffs()[i] * ipow(b, P.coeffs().size() - 1 - i);
    }
    return r;
}

UniPoly dehomogenize(const HomogeneousPoly& P, DehomSide side) {
    std::vector<BigInt> cs = P.coeffs();
    if (side == DehomSide::SetU1) std::reverse(cs.begin(), cs.end());
    return UniPoly(std::move(cs));
}

HomogeneousPoly homogenize(const UniPoly& p, int degree) {
    if (p.is_zero()) return HomogeneousPoly();
    if (degree < p.degree()) throw std::invalid_argument("homogenize: target degree too small");
    std::vector<BigInt> cs(static_cast<size_t>(degree) + 1, BigInt(0));
    for (size_t i = 0; i < p.coeffs().size(); ++i) cs[i] = p.coeffs()[i];
    return HomogeneousPoly(degree, std::move(cs));
}

namespace {

HomogeneousPoly combine(const HomogeneousPoly& P, const HomogeneousPoly& Q, int sgn) {
    if (P.degree() != Q.degree() && !P.is_zero() && !Q.is_zero())
        throw std::invalid_argument("homogeneous add/sub needs equal degrees");
    if (P.is_zero()) return sgn > 0 ? Q : neg(Q);
    if (Q.is_zero()) return P;
    std::vector<BigInt> cs(P.coeffs().size());
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = P.coeffs()[i] + sgn * Q.coeffs()[i];
    return HomogeneousPoly(P.degree(), std::move(cs));
}

}  // namespace

HomogeneousPoly add(const HomogeneousPoly& P, const HomogeneousPoly& Q) { return combine(P, Q, 1); }
HomogeneousPoly sub(const HomogeneousPoly& P, const HomogeneousPoly& Q) { return combine(P, Q, -1); }

HomogeneousPoly neg(const HomogeneousPoly& P) {
    std::vector<BigInt> cs = P.coeffs();
    for (auto& c : cs) c = -c;
    return HomogeneousPoly(P.degree(), std::move(cs));
}

HomogeneousPoly scale(const HomogeneousPoly& P, const BigInt& c) {
    if (c == 0) return HomogeneousPoly();
    std::vector<BigInt> cs = P.coeffs();
    for (auto& x : cs) x *= c;
    return HomogeneousPoly(P.degree(), std::move(cs));
}

HomogeneousPoly mul(const HomogeneousPoly& P, const HomogeneousPoly& Q) {
    if (P.is_zero() || Q.is_zero()) return HomogeneousPoly();
    std::vector<BigInt> cs(P.coeffs().size() + Q.coeffs().size() - 1, BigInt(0));
    for (size_t i = 0; i < P.coeffs().size(); ++i)
        for (size_t j = 0; j < Q.coeffs().size(); ++j) cs[i + j] += P.coeffs()[i] * Q.coeffs()[j];
    return HomogeneousPoly(P.degree() + Q.degree(), std::move(cs));
}

HomogeneousPoly pow(const HomogeneousPoly& P, unsigned e) {
    HomogeneousPoly r = HomogeneousPoly::constant(1);
    for (unsigned i = 0; i < e; ++i) r = mul(r, P);
    return r;
}

namespace {

// Strips the monomial factor u^a v^b, returning (stripped, a, b).
struct Stripped {
    HomogeneousPoly core;
    int upow;
    int vpow;
};

Stripped strip_monomials(const HomogeneousPoly& P) {
    const int a = P.upower(), b = P.vpower();
    const int d = P.degree() - a - b;
    std::vector<BigInt> cs(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) cs[static_cast<size_t>(i)] = P.coeffs()[static_cast<size_t>(i + a)];
    return {HomogeneousPoly(d, std::move(cs)), a, b};
}

HomogeneousPoly attach_monomials(const HomogeneousPoly& P, int upow, int vpow) {
    return mul(P, HomogeneousPoly::monomial(BigInt(1), upow, vpow));
}

}  // namespace

HomogeneousPoly gcd_homo(const HomogeneousPoly& P, const HomogeneousPoly& Q) {
    if (P.is_zero() && Q.is_zero()) throw std::invalid_argument("gcd_homo(0, 0) is undefined");

    HomogeneousPoly g;
    if (P.is_zero() || Q.is_zero()) {
        const HomogeneousPoly& N = P.is_zero() ? Q : P;
        Stripped s = strip_monomials(N);
        UniPoly core = primitive_part(dehomogenize(s.core, DehomSide::SetV1));
        g = attach_monomials(homogenize(core, s.core.degree()), s.upow, s.vpow);
    } else {
        // gcd(u^a v^b P~, u^c v^d Q~) = u^min(a,c) v^min(b,d) gcd(P~, Q~),
        // and the stripped parts dehomogenize bijectively (degree preserved,
        // constant term nonzero), so the univariate gcd lifts back exactly.
        Stripped sp = strip_monomials(P), sq = strip_monomials(Q);
        UniPoly gp = gcd_primitive(dehomogenize(sp.core, DehomSide::SetV1),
                                   dehomogenize(sq.core, DehomSide::SetV1));
        g = attach_monomials(homogenize(gp, gp.degree()),
                             std::min(sp.upow, sq.upow), std::min(sp.vpow, sq.vpow));
    }

    const BigInt& at01 = g.coeffs()[0];  // value at (0,1)
    if (at01 != 0) {
        if (at01 < 0) g = neg(g);
    } else {
        for (size_t i = g.coeffs().size(); i-- > 0;)
            if (g.coeffs()[i] != 0) {
                if (g.coeffs()[i] < 0) g = neg(g);
                break;
            }
    }
    return g;
}

std::optional<HomogeneousPoly> divide_exact(const HomogeneousPoly& P, const HomogeneousPoly& Q) {
    if (Q.is_zero()) return std::nullopt;
    if (P.is_zero()) return HomogeneousPoly();
    Stripped sp = strip_monomials(P), sq = strip_monomials(Q);
    if (sq.upow > sp.upow || sq.vpow > sp.vpow) return std::nullopt;
    if (sq.core.degree() > sp.core.degree()) return std::nullopt;

    QPoly num = to_q(dehomogenize(sp.core, DehomSide::SetV1));
    QPoly den = to_q(dehomogenize(sq.core, DehomSide::SetV1));
    QPoly quot(num.size() - den.size() + 1, Rational(0));
    while (num.size() >= den.size()) {
        Rational f = num.back() / den.back();
        size_t shift = num.size() - den.size();
        quot[shift] = f;
        for (size_t i = 0; i < den.size(); ++i) num[i + shift] -= f * den[i];
        num.pop_back();
        trim_q(num);
        if (num.empty()) break;
    }
    if (!num.empty()) return std::nullopt;

    std::vector<BigInt> cs;
    cs.reserve(quot.size());
    for (const auto& c : quot) {
        if (c.get_den() != 1) return std::nullopt;
        cs.emplace_back(c.get_num());
    }
    UniPoly q{std::move(cs)};
    int target = sp.core.degree() - sq.core.degree();
    return attach_monomials(homogenize(q, target), sp.upow - sq.upow, sp.vpow - sq.vpow);
}

}  // namespace entangle
