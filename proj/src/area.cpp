#include "entangle/area.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "entangle/lattice.hpp"
#include "entangle/parallel.hpp"

namespace entangle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Horner evaluation with the standard running error bound: the result is
// within (2n+2) eps * sum |c_i| |u|^i |v|^{n-i} of the true value.
FormValue eval_tracked(const HomogeneousPoly& P, double u, double v) {
    double r = 0, mag = 0, vp = 1, avp = 1;
    const double au = std::abs(u), av = std::abs(v);
    for (size_t i = P.coeffs().size(); i-- > 0;) {
        const double c = P.coeffs()[i].get_d();
        r = r * u + c * vp;
        mag = mag * au + std::abs(c) * avp;
        vp *= v;
        avp *= av;
    }
    const double n = static_cast<double>(P.degree());
    return {r, (2 * n + 2) * kEps * mag};
}

}  // namespace

FormValue h_form(const FamilySpec& spec, double theta) {
    const double u = std::cos(theta), v = std::sin(theta);
    const FormValue a = eval_tracked(spec.A, u, v);
    const FormValue b = eval_tracked(spec.B, u, v);
    const double fa_abs = 4 * std::abs(a.value * a.value * a.value);
    const double fb = 27 * b.value * b.value;
    const double ea = 12 * a.value * a.value * a.err + 4 * fa_abs * kEps;
    const double eb = 54 * std::abs(b.value) * b.err + 4 * fb * kEps;
    FormValue out;
    out.value = std::max(fa_abs, fb);
    out.err = std::max(ea, eb);
    if (!(out.value > 0))
        throw std::domain_error("height form vanishes on the circle (invalid family)");
    return out;
}

namespace {

struct PanelResult {
    double integral = 0;
    double quad_err = 0;
    double form_err = 0;
    long evals = 0;
};

struct Integrand {
    const std::function<FormValue(double)>* form;
    double exponent;  // -2/d

    // value and propagated form error of (1/2) h^(2*exponent/2)
    void operator()(double theta, double& val, double& ferr, long& evals) const {
        FormValue h = (*form)(theta);
        ++evals;
        const double p = std::pow(h.value, exponent);
        val = 0.5 * p;
        ferr = 0.5 * std::abs(exponent) * p / h.value * h.err + 2 * kEps * val;
    }
};

void adaptive_simpson(const Integrand& f, double a, double b, double fa, double fb, double fm,
                      double ea, double eb, double em, double whole, double tol, int depth,
                      PanelResult& out) {
    const double m = 0.5 * (a + b);
    double flm, frm, elm, erm;
    f(0.5 * (a + m), flm, elm, out.evals);
    f(0.5 * (m + b), frm, erm, out.evals);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0) throw std::runtime_error("area quadrature failed to reach tolerance");
    if (std::abs(diff) <= 15 * tol || (b - a) < 1e-12) {
        out.integral += left + right + diff / 15;
        out.quad_err += std::abs(diff) / 15;
        out.form_err += (ea + eb + 4 * (elm + erm) + 2 * em) / 12 * (b - a);
        return;
    }
    adaptive_simpson(f, a, m, fa, fm, flm, ea, em, elm, left, tol / 2, depth - 1, out);
    adaptive_simpson(f, m, b, fm, fb, frm, em, eb, erm, right, tol / 2, depth - 1, out);
}

}  // namespace

AreaEstimate area_polar_integral(const std::function<FormValue(double)>& form, int d, double tol) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    Integrand f{&form, -2.0 / d};
    PanelResult res;

    // seed panels keep the adaptive pass from stepping over narrow features
    const int seed = 64;
    for (int i = 0; i < seed; ++i) {
        const double a = M_PI * i / seed, b = M_PI * (i + 1) / seed;
        double fa, fb, fm, ea, eb, em;
        f(a, fa, ea, res.evals);
        f(b, fb, eb, res.evals);
        const double m = 0.5 * (a + b);
        f(m, fm, em, res.evals);
        const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
        adaptive_simpson(f, a, b, fa, fb, fm, ea, eb, em, whole, tol / seed, 48, res);
    }

    AreaEstimate est;
    est.value = res.integral;
    est.err = res.quad_err + res.form_err + 4 * kEps * std::abs(res.integral);
    est.method = "polar-adaptive";
    est.evaluations = res.evals;
    return est;
}

AreaEstimate area_polar(const FamilySpec& spec, double tol) {
    return area_polar_integral([&spec](double theta) { return h_form(spec, theta); }, spec.d, tol);
}

AreaEstimate area_grid_indicator(const std::function<bool(double, double)>& inside, double umax,
                                 double vmax, int n, int threads) {
    if (n < 16) throw std::invalid_argument("grid resolution must be at least 16");
    const double dx = 2 * umax / n, dy = vmax / n;
    const double cell = dx * dy;

    struct RowCounts {
        long inside = 0;
        long boundary = 0;
    };
    auto rows = run_chunked<RowCounts>(0, n, resolve_threads(threads), [&](long jlo, long jhi) {
        RowCounts rc;
        std::vector<char> lower(static_cast<size_t>(n) + 1), upper(static_cast<size_t>(n) + 1);
        for (long j = jlo; j < jhi; ++j) {
            for (long i = 0; i <= n; ++i) {
                const double u = -umax + i * dx;
                lower[static_cast<size_t>(i)] = inside(u, j * dy);
                upper[static_cast<size_t>(i)] = inside(u, (j + 1) * dy);
            }
            for (long i = 0; i < n; ++i) {
                const double uc = -umax + (i + 0.5) * dx;
                const double vc = (j + 0.5) * dy;
                if (inside(uc, vc)) ++rc.inside;
                const char a = lower[static_cast<size_t>(i)], b = lower[static_cast<size_t>(i) + 1];
                const char c = upper[static_cast<size_t>(i)], d = upper[static_cast<size_t>(i) + 1];
                if (!(a == b && b == c && c == d)) ++rc.boundary;
            }
        }
        return rc;
    });

    AreaEstimate est;
    long total_in = 0, total_bd = 0;
    for (const auto& rc : rows) {
        total_in += rc.inside;
        total_bd += rc.boundary;
    }
    est.value = cell * static_cast<double>(total_in);
    est.err = cell * static_cast<double>(total_bd);
    est.method = "grid";
    est.evaluations = static_cast<long>(n) * n;
    return est;
}

AreaEstimate area_grid(const FamilySpec& spec, int n, int threads) {
    BoundingBox box = bounding_box(spec, 1);
    const double umax = box.rho_u * 1.02, vmax = box.rho_v * 1.02;
    auto inside = [&spec](double u, double v) {
        if (v <= 0) return false;
        const double a = eval_tracked(spec.A, u, v).value;
        const double b = eval_tracked(spec.B, u, v).value;
        return 4 * std::abs(a * a * a) <= 1.0 && 27 * b * b <= 1.0;
    };
    return area_grid_indicator(inside, umax, vmax, n, threads);
}

HeightComparison height_comparison_constants(const FamilySpec& spec) {
    const double ex = static_cast<double>(spec.d) / spec.r;
    auto ratio = [&](double theta) {
        const double u = std::cos(theta), v = std::sin(theta);
        const double c = eval_tracked(spec.C, u, v).value;
        if (!(c > 0)) throw std::domain_error("C vanishes on the circle (invalid family)");
        return h_form(spec, theta).value / std::pow(c, ex);
    };

    const int N = 1 << 17;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    double th_lo = 0, th_hi = 0;
    for (int i = 0; i <= N; ++i) {
        const double theta = M_PI * i / N;
        const double f = ratio(theta);
        if (f < lo) {
            lo = f;
            th_lo = theta;
        }
        if (f > hi) {
            hi = f;
            th_hi = theta;
        }
    }
    auto refine = [&](double theta0, bool minimize) {
        double a = theta0 - M_PI / N, b = theta0 + M_PI / N;
        for (int it = 0; it < 200; ++it) {
            const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
            const bool keep_left = minimize ? (ratio(m1) < ratio(m2)) : (ratio(m1) > ratio(m2));
            if (keep_left)
                b = m2;
            else
                a = m1;
        }
        return ratio(0.5 * (a + b));
    };
    lo = std::min(lo, refine(th_lo, true));
    hi = std::max(hi, refine(th_hi, false));

    HeightComparison hc;
    hc.c1 = lo * (1 - 1e-9);
    hc.c2 = hi * (1 + 1e-9);
    hc.samples = N + 1;
    return hc;
}

std::string area_to_json(const std::string& family, const AreaEstimate& est) {
    nlohmann::json j;
    j["family"] = family;
    j["method"] = est.method;
    j["value"] = est.value;
    j["err"] = est.err;
    j["evaluations"] = est.evaluations;
    return j.dump();
}

}  // namespace entangle
