#pragma once

#include <functional>

namespace polling {

// Central difference with one Richardson step: O(h^4) error.
inline double central_derivative(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// One-sided difference using points x, x+h, x+2h (pass h < 0 for the
// backward variant), sharpened by one Richardson step: O(h^3) error.
// Used where the function is only defined on one side of x (LSTs of
// moment-only families at 0, PGFs at the unit vector).
inline double one_sided_derivative(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double step) {
        return (-3.0 * f(x) + 4.0 * f(x + step) - f(x + 2.0 * step)) / (2.0 * step);
    };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Mean of a nonnegative random variable from its LST: -d/dw at 0, one-sided
// (valid for every family). mean_scale is a rough guess of the mean; the
// step shrinks with it so the transform's curvature stays resolved.
inline double lst_mean(const std::function<double(double)>& lst, double mean_scale) {
    double inv = mean_scale > 0.0 ? 1.0 / mean_scale : 1.0;
    double h = 1e-3 * (inv > 1.0 ? inv : 1.0);
    return -one_sided_derivative(lst, 0.0, h);
}

}  // namespace polling
