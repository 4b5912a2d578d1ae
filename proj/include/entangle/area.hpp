#ifndef ENTANGLE_AREA_HPP
#define ENTANGLE_AREA_HPP

#include <functional>
#include <string>

#include "entangle/family.hpp"

namespace entangle {

/* Area of the unit region R = { v > 0, 4|A|^3 <= 1, 27|B|^2 <= 1 } by two
 * independent routes: polar quadrature (R is radial with r(theta) =
 * h(theta)^{-1/d} by degree-d homogeneity of the height form) and cell
 * counting on a grid. */

struct FormValue {
    double value = 0;
    double err = 0;  // absolute evaluation-error bound
};

struct AreaEstimate {
    double value = 0;
    double err = 0;  // estimated absolute error
    std::string method;
    long evaluations = 0;
};

// max(4|A|^3, 27|B|^2) at (cos theta, sin theta), with a floating-point error
// bound from coefficient-magnitude analysis of the Horner evaluation.
FormValue h_form(const FamilySpec& spec, double theta);

// integral over (0, pi) of (1/2) form(theta)^{-2/d}, adaptive Simpson.
AreaEstimate area_polar_integral(const std::function<FormValue(double)>& form, int d, double tol);

AreaEstimate area_polar(const FamilySpec& spec, double tol);

// Cell-count of the indicator over [-umax, umax] x (0, vmax]; the error bound
// is the total area of cells straddling the boundary.
AreaEstimate area_grid_indicator(const std::function<bool(double, double)>& inside, double umax,
                                 double vmax, int n, int threads = 0);

AreaEstimate area_grid(const FamilySpec& spec, int n, int threads = 0);

struct HeightComparison {
    double c1 = 0;  // min over the circle of H / C^{d/r}, with safety slack
    double c2 = 0;  // max, with safety slack
    int samples = 0;
};

// Bracketing constants with c1 C(a,b)^{d/r} <= H(a,b) <= c2 C(a,b)^{d/r}; the
// ratio is homogeneous of degree 0, so circle sampling plus local refinement
// suffices.
HeightComparison height_comparison_constants(const FamilySpec& spec);

std::string area_to_json(const std::string& family, const AreaEstimate& est);

}  // namespace entangle

#endif
