#include "entangle/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "entangle/modarith.hpp"
#include "entangle/parallel.hpp"

namespace entangle {

BigInt height_H(const FamilySpec& spec, const BigInt& a, const BigInt& b) {
    if (a == 0 && b == 0) throw std::invalid_argument("height at (0, 0)");
    BigInt Av = eval_homo(spec.A, a, b);
    BigInt Bv = eval_homo(spec.B, a, b);
    BigInt ha = abs(4 * Av * Av * Av);
    BigInt hb = abs(27 * Bv * Bv);
    return ha > hb ? ha : hb;
}

unsigned long minimality_defect(const BigInt& Aval, const BigInt& Bval) {
    if (Aval == 0 && Bval == 0) throw std::invalid_argument("minimality defect of (0, 0)");

    // Any prime in the defect satisfies p^4 <= |A| (when A != 0) and
    // p^6 <= |B| (when B != 0).
    BigInt bound;
    if (Aval == 0)
        bound = iroot(Bval, 6);
    else if (Bval == 0)
        bound = iroot(Aval, 4);
    else
        bound = std::min(iroot(Aval, 4), iroot(Bval, 6));
    if (bound < 2) return 1;

    const long limit = to_long_checked(bound);
    BigInt m = 1;
    for (long p : primes_upto(limit)) {
        const auto pu = static_cast<unsigned long>(p);
        unsigned long e;
        if (Aval == 0) {
            if (!mpz_divisible_ui_p(Bval.get_mpz_t(), pu)) continue;
            e = valuation(Bval, BigInt(p)) / 6;
        } else if (Bval == 0) {
            if (!mpz_divisible_ui_p(Aval.get_mpz_t(), pu)) continue;
            e = valuation(Aval, BigInt(p)) / 4;
        } else {
            if (!mpz_divisible_ui_p(Aval.get_mpz_t(), pu)) continue;
            if (!mpz_divisible_ui_p(Bval.get_mpz_t(), pu)) continue;
            e = std::min(valuation(Aval, BigInt(p)) / 4, valuation(Bval, BigInt(p)) / 6);
        }
        for (unsigned long i = 0; i < e; ++i) m *= p;
    }
    return static_cast<unsigned long>(m.get_ui());
}

unsigned long minimality_defect_scan(const BigInt& Aval, const BigInt& Bval) {
    if (Aval == 0 && Bval == 0) throw std::invalid_argument("minimality defect of (0, 0)");
    unsigned long best = 1;
    for (BigInt m = 2;; ++m) {
        BigInt m4 = ipow(m, 4), m6 = ipow(m, 6);
        if (Aval != 0 && m4 > abs(Aval)) break;
        if (Aval == 0 && m6 > abs(Bval)) break;
        bool ok = (Aval == 0 || divides(m4, Aval)) && (Bval == 0 || divides(m6, Bval));
        if (ok) best = static_cast<unsigned long>(m.get_ui());
    }
    return best;
}

BigInt curve_height(const BigInt& Aval, const BigInt& Bval) {
    unsigned long md = minimality_defect(Aval, Bval);
    BigInt ha = abs(4 * Aval * Aval * Aval);
    BigInt hb = abs(27 * Bval * Bval);
    BigInt H = ha > hb ? ha : hb;
    BigInt q;
    mpz_divexact(q.get_mpz_t(), H.get_mpz_t(), ipow(BigInt(static_cast<long>(md)), 12).get_mpz_t());
    return q;
}

namespace {

double eval_homo_double(const HomogeneousPoly& P, double u, double v) {
    double r = 0, vp = 1;
    for (size_t i = P.coeffs().size(); i-- > 0;) {
        r = r * u + P.coeffs()[i].get_d() * vp;
        vp *= v;
    }
    return r;
}

// max(4|A|^3, 27|B|^2) at a point of the unit circle
double circle_height(const FamilySpec& spec, double theta) {
    const double u = std::cos(theta), v = std::sin(theta);
    const double av = eval_homo_double(spec.A, u, v);
    const double bv = eval_homo_double(spec.B, u, v);
    return std::max(4.0 * std::abs(av * av * av), 27.0 * bv * bv);
}

}  // namespace

BoundingBox bounding_box(const FamilySpec& spec, const BigInt& X, double margin) {
    if (X < 1) throw std::invalid_argument("bounding_box needs X >= 1");
    if (margin < 0) throw std::invalid_argument("negative margin");

    // r(theta) = h(theta)^{-1/d} is the polar radius of R; scan a fine grid
    // over (0, pi) and refine the coordinate maxima locally.
    const int N = 1 << 14;
    const double inv_d = 1.0 / spec.d;
    double rho_u = 0, rho_v = 0, best_u_theta = 0, best_v_theta = 0;
    for (int i = 0; i <= N; ++i) {
        const double theta = M_PI * i / N;
        const double h = circle_height(spec, theta);
        if (!(h > 0)) throw std::domain_error("height form not positive on the circle");
        const double r = std::pow(h, -inv_d);
        if (r * std::abs(std::cos(theta)) > rho_u) {
            rho_u = r * std::abs(std::cos(theta));
            best_u_theta = theta;
        }
        if (r * std::sin(theta) > rho_v) {
            rho_v = r * std::sin(theta);
            best_v_theta = theta;
        }
    }
    auto refine = [&](double theta0, auto objective) {
        double lo = theta0 - M_PI / N, hi = theta0 + M_PI / N, best = objective(theta0);
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (objective(m1) < objective(m2))
                lo = m1;
            else
                hi = m2;
            best = std::max({best, objective(m1), objective(m2)});
        }
        return best;
    };
    rho_u = refine(best_u_theta, [&](double t) {
        return std::pow(circle_height(spec, t), -inv_d) * std::abs(std::cos(t));
    });
    rho_v = refine(best_v_theta, [&](double t) {
        return std::pow(circle_height(spec, t), -inv_d) * std::sin(t);
    });

    // X^{1/d} bounded above by floor-root + 1; generous rounding only ever
    // grows the box.
    const double xroot = iroot(X, static_cast<unsigned long>(spec.d)).get_d() + 1.0;
    BoundingBox box;
    box.rho_u = rho_u;
    box.rho_v = rho_v;
    box.a_max = static_cast<long>(std::ceil((1.0 + margin) * xroot * rho_u)) + 1;
    box.b_max = static_cast<long>(std::ceil((1.0 + margin) * xroot * rho_v)) + 1;

    // Check on integer samples just outside the box: heights must exceed X.
    auto assert_outside = [&](long a, long b) {
        if (height_H(spec, BigInt(a), BigInt(b)) <= X)
            throw std::logic_error("bounding box too small; increase margin");
    };
    const long step_b = std::max<long>(1, box.b_max / 16);
    for (long b = 1; b <= box.b_max + 1; b += step_b) {
        assert_outside(box.a_max + 1, b);
        assert_outside(-box.a_max - 1, b);
    }
    const long step_a = std::max<long>(1, box.a_max / 16);
    for (long a = -box.a_max - 1; a <= box.a_max + 1; a += step_a) assert_outside(a, box.b_max + 1);
    return box;
}

namespace {

CurveRecord make_record(const FamilySpec& spec, long a, long b) {
    CurveRecord rec;
    rec.a = a;
    rec.b = b;
    rec.Aval = eval_homo(spec.A, BigInt(a), BigInt(b));
    rec.Bval = eval_homo(spec.B, BigInt(a), BigInt(b));
    BigInt ha = abs(4 * rec.Aval * rec.Aval * rec.Aval);
    BigInt hb = abs(27 * rec.Bval * rec.Bval);
    rec.H = ha > hb ? ha : hb;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), BigInt(a).get_mpz_t(), BigInt(b).get_mpz_t());
    rec.coprime = (g == 1);
    rec.nonsingular = (4 * rec.Aval * rec.Aval * rec.Aval + 27 * rec.Bval * rec.Bval != 0);
    rec.md = (rec.Aval == 0 && rec.Bval == 0) ? 0 : minimality_defect(rec.Aval, rec.Bval);
    return rec;
}

}  // namespace

std::vector<CurveRecord> enumerate_F(const FamilySpec& spec, const BigInt& X, int threads) {
    if (X < 1) throw std::invalid_argument("enumerate_F needs X >= 1");
    BoundingBox box = bounding_box(spec, X);
    auto chunks = run_chunked<std::vector<CurveRecord>>(
        1, box.b_max + 1, resolve_threads(threads), [&](long blo, long bhi) {
            std::vector<CurveRecord> out;
            for (long b = blo; b < bhi; ++b)
                for (long a = -box.a_max; a <= box.a_max; ++a) {
                    CurveRecord rec = make_record(spec, a, b);
                    if (rec.H <= X) out.push_back(std::move(rec));
                }
            return out;
        });
    std::vector<CurveRecord> all;
    for (auto& c : chunks)
        for (auto& r : c) all.push_back(std::move(r));
    return all;
}

std::vector<CurveRecord> enumerate_C(const FamilySpec& spec, const BigInt& X, int threads) {
    std::vector<CurveRecord> all = enumerate_F(spec, X, threads);
    std::vector<CurveRecord> out;
    for (auto& r : all)
        if (r.in_C()) out.push_back(std::move(r));
    return out;
}

namespace {

bool passes_Dz(const CurveRecord& rec, const std::vector<long>& primes) {
    for (long p : primes) {
        if (rec.a % p == 0 && rec.b % p == 0) return false;
        if (divides(ipow(BigInt(p), 4), rec.Aval) && divides(ipow(BigInt(p), 6), rec.Bval))
            return false;
    }
    return true;
}

}  // namespace

size_t count_Dz(const FamilySpec& spec, const BigInt& X, long z, int threads) {
    return count_scan(spec, X, z, threads).count_Dz;
}

CountSummary count_scan(const FamilySpec& spec, const BigInt& X, long z, int threads) {
    CountSummary s;
    s.X = X;
    std::vector<long> primes = primes_upto(z);
    std::vector<CurveRecord> recs = enumerate_F(spec, X, threads);
    std::set<std::pair<std::string, std::string>> models;
    for (const auto& r : recs) {
        ++s.count_F;
        if (passes_Dz(r, primes)) ++s.count_Dz;
        if (r.in_C()) {
            ++s.count_C;
            models.insert({dec(r.Aval), dec(r.Bval)});
        }
    }
    s.distinct_models = models.size();
    return s;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

size_t write_records(const std::vector<CurveRecord>& records, std::ostream& sink,
                     RecordFormat format) {
    if (format == RecordFormat::Csv) sink << "a,b,A,B,H,md,in_C\n";
    for (const auto& r : records) {
        if (format == RecordFormat::Jsonl) {
            nlohmann::json j;
            j["a"] = r.a;
            j["b"] = r.b;
            j["A"] = dec(r.Aval);
            j["B"] = dec(r.Bval);
            j["H"] = dec(r.H);
            j["md"] = r.md;
            j["in_C"] = r.in_C();
            sink << j.dump() << '\n';
        } else {
            sink << r.a << ',' << r.b << ',' << csv_quote(dec(r.Aval)) << ','
                 << csv_quote(dec(r.Bval)) << ',' << csv_quote(dec(r.H)) << ',' << r.md << ','
                 << (r.in_C() ? "true" : "false") << '\n';
        }
    }
    if (!sink) throw std::runtime_error("record sink write failure");
    return records.size();
}

namespace {

CurveRecord record_from_fields(long a, long b, const std::string& A, const std::string& B,
                               const std::string& H, unsigned long md, bool in_c) {
    CurveRecord r;
    r.a = a;
    r.b = b;
    r.Aval = parse_bigint(A);
    r.Bval = parse_bigint(B);
    r.H = parse_bigint(H);
    r.md = md;
    // coprime/nonsingular are derivable; recompute so in_C round-trips
    BigInt g;
    mpz_gcd(g.get_mpz_t(), BigInt(a).get_mpz_t(), BigInt(b).get_mpz_t());
    r.coprime = (g == 1);
    r.nonsingular = (4 * r.Aval * r.Aval * r.Aval + 27 * r.Bval * r.Bval != 0);
    if (r.in_C() != in_c) throw std::runtime_error("inconsistent in_C flag in record");
    return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::vector<CurveRecord> read_records(std::istream& source, RecordFormat format) {
    std::vector<CurveRecord> out;
    std::string line;
    bool header_seen = false;
    while (std::getline(source, line)) {
        if (line.empty()) continue;
        if (format == RecordFormat::Jsonl) {
            nlohmann::json j = nlohmann::json::parse(line);
            out.push_back(record_from_fields(j.at("a").get<long>(), j.at("b").get<long>(),
                                             j.at("A").get<std::string>(), j.at("B").get<std::string>(),
                                             j.at("H").get<std::string>(),
                                             j.at("md").get<unsigned long>(), j.at("in_C").get<bool>()));
        } else {
            if (!header_seen) {
                header_seen = true;
                continue;
            }
            auto f = split_csv_line(line);
            if (f.size() != 7) throw std::runtime_error("bad csv record: " + line);
            out.push_back(record_from_fields(std::stol(f[0]), std::stol(f[1]), f[2], f[3], f[4],
                                             std::stoul(f[5]), f[6] == "true"));
        }
    }
    return out;
}

}  // namespace entangle
