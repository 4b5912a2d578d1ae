#ifndef ENTANGLE_PREDICT_HPP
#define ENTANGLE_PREDICT_HPP

#include <string>
#include <vector>

#include "entangle/area.hpp"
#include "entangle/lattice.hpp"
#include "entangle/localdensity.hpp"

namespace entangle {

/* Assembles the counting prediction: observed counts against the leading
 * constant prod_l d_l * Area(R) times X^{2/d}, growth-exponent fits, and the
 * one-shot verification suite for the built-in families. */

struct Interval {
    double lo = 0;
    double hi = 0;
    double mid() const { return 0.5 * (lo + hi); }
};

// [euler.lower * (area - err), euler.upper * (area + err)]
Interval leading_constant(const FamilySpec& spec, long z, double tol, int threads = 0);

struct LadderRow {
    BigInt X;
    size_t count_F = 0;
    size_t count_Dz = 0;
    size_t count_C = 0;
    size_t distinct_models = 0;
    Interval pred_F;  // Area(R) * X^{2/d}
    Interval pred_C;  // full constant * X^{2/d}
    double ratio_F = 0;  // count_F / mid(pred_F)
    double ratio_C = 0;  // count_C / mid(pred_C)
};

struct PredictionReport {
    std::string family;
    long z = 0;
    double tol = 0;
    Interval constant;  // leading constant for the minimal-curve count
    AreaEstimate area;
    std::vector<LadderRow> rows;
    double exponent = 0;  // least-squares slope of log count_F vs log X
    double exponent_residual = 0;
};

PredictionReport ratio_table(const FamilySpec& spec, const std::vector<BigInt>& ladder, long z,
                             double tol, int threads = 0);

struct ExponentFit {
    double slope = 0;
    double max_residual = 0;
};

// Least-squares slope of log(count) against log(X); counts must be positive
// and at least 3 points are required.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);
ExponentFit fit_exponent_rows(const std::vector<LadderRow>& rows);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string family;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Runs the verification suite against the built-in family's known exact
// values: Sigma and its witnesses, the exceptional densities with their
// per-class exclusion counts, the root-count formula, three-way density
// agreement at l = 7 and 11, the j-map identity, and the lattice-count-to-
// area ratio at the top of the height ladder.
VerifyReport verify_paper(const FamilySpec& spec, int threads = 0);

std::vector<BigInt> default_ladder(const FamilySpec& spec);

std::string prediction_to_json(const PredictionReport& rep);
std::string prediction_to_csv(const PredictionReport& rep);
std::string verify_to_json(const VerifyReport& rep);

}  // namespace entangle

#endif
