#pragma once

#include <functional>
#include <vector>

namespace gsf::quad {

/// Value plus an absolute error estimate from the underlying rule.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b]. Good for smooth or oscillatory
/// integrands with no endpoint blowup.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol);

/// tanh-sinh on (a, b). Tolerates integrable endpoint singularities;
/// never evaluates f at a or b.
QuadResult integrate_singular(const std::function<double(double)>& f, double a, double b, double tol);

/// Integral of f over [b, +inf) via the substitution u = 1/v, i.e.
/// integral over (0, 1/b] of f(1/v)/v^2 dv. Requires b > 0.
QuadResult integrate_tail(const std::function<double(double)>& f, double b, double tol);

/// Least-squares power-law fit y ~ c * x^slope on log-log axes.
struct PowerFit {
    double slope = 0.0;
    double r2 = 0.0;       // coefficient of determination on the log-log points
    int points_used = 0;   // samples with y > 0 actually fitted
    bool valid = false;    // enough usable points and spread to trust the slope
    bool flat = false;     // |y| varied by less than a factor ~2: slope pinned to 0
};

/// Sample f at n_points geometrically spaced abscissae in [x_lo, x_hi] and
/// fit the exponent. Nonpositive samples are dropped (densities can have
/// isolated zeros); if fewer than 4 usable points remain the fit is invalid.
PowerFit fit_power_law(const std::function<double(double)>& f, double x_lo, double x_hi,
                       int n_points = 24);

/// Polynomial extrapolation of (x_i, y_i) to x = 0 (Neville's scheme).
/// error is the magnitude of the last correction step.
QuadResult extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys);

/// Ordinary least squares y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gsf::quad
