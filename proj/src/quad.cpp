#include "gsf/quad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gsf::quad {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("integrate: tol must be positive");
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol, &err);
    return {v, err};
}

QuadResult integrate_singular(const std::function<double(double)>& f, double a, double b,
                              double tol) {
    if (!(tol > 0.0)) throw std::domain_error("integrate_singular: tol must be positive");
    boost::math::quadrature::tanh_sinh<double> rule(12);
    double err = 0.0, l1 = 0.0;
    double v = rule.integrate(f, a, b, tol, &err, &l1);
    // tanh_sinh reports a relative error against the L1 norm; convert to absolute.
    return {v, err * std::max(l1, 1.0)};
}

QuadResult integrate_tail(const std::function<double(double)>& f, double b, double tol) {
    if (!(b > 0.0)) throw std::domain_error("integrate_tail: lower limit must be positive");
    auto mapped = [&f](double v) {
        const double fv = f(1.0 / v);
        // The quadrature probes v all the way down to denormals, where v*v
        // underflows to 0; a dead integrand must short-circuit before the
        // division turns 0/0 into NaN.
        if (fv == 0.0) return 0.0;
        return fv / (v * v);
    };
    return integrate_singular(mapped, 0.0, 1.0 / b, tol);
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw std::invalid_argument("fit_line: need >= 2 paired points");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LineFit out;
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    if (syy == 0.0) {
        out.r2 = 1.0;  // constant data fitted exactly by a flat line
    } else {
        double ss_res = 0;
        for (size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (out.intercept + out.slope * xs[i]);
            ss_res += r * r;
        }
        out.r2 = 1.0 - ss_res / syy;
    }
    return out;
}

PowerFit fit_power_law(const std::function<double(double)>& f, double x_lo, double x_hi,
                       int n_points) {
    if (!(x_lo > 0.0 && x_hi > x_lo)) throw std::domain_error("fit_power_law: need 0 < x_lo < x_hi");
    if (n_points < 4) throw std::domain_error("fit_power_law: need at least 4 points");
    std::vector<double> lx, ly;
    lx.reserve(n_points);
    ly.reserve(n_points);
    const double step = std::log(x_hi / x_lo) / (n_points - 1);
    double y_min = 0.0, y_max = 0.0;
    bool have_y = false;
    for (int i = 0; i < n_points; ++i) {
        const double x = x_lo * std::exp(step * i);
        const double y = f(x);
        if (!std::isfinite(y) || y <= 0.0) continue;  // isolated zeros or sign flips are skipped
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
        if (!have_y) {
            y_min = y_max = y;
            have_y = true;
        } else {
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    PowerFit out;
    out.points_used = int(lx.size());
    if (out.points_used < 4) return out;  // invalid
    if (y_max <= 2.0 * y_min) {
        // Less than a factor-2 swing over the window: the data is flat, a
        // log-log slope would be fitting noise. Report slope 0 exactly.
        out.slope = 0.0;
        out.r2 = 1.0;
        out.flat = true;
        out.valid = true;
        return out;
    }
    const LineFit lf = fit_line(lx, ly);
    out.slope = lf.slope;
    out.r2 = lf.r2;
    out.valid = true;
    return out;
}

QuadResult extrapolate_to_zero(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n == 0 || ys.size() != n) throw std::invalid_argument("extrapolate_to_zero: empty input");
    // Neville tableau evaluated at x = 0:
    // p_{i,j} = (x_i * p_{i+1,j-1} - x_{i+j} * p_{i,j-1}) / (x_i - x_{i+j}).
    std::vector<double> t(ys);
    double last_step = n > 1 ? 0.0 : std::abs(t[0]) * 1e-15;
    for (size_t j = 1; j < n; ++j) {
        const double top_before = t[0];
        for (size_t i = 0; i + j < n; ++i) {
            const double dx = xs[i] - xs[i + j];
            if (dx == 0.0) throw std::invalid_argument("extrapolate_to_zero: repeated abscissa");
            t[i] = (xs[i] * t[i + 1] - xs[i + j] * t[i]) / dx;
        }
        last_step = std::abs(t[0] - top_before);
    }
    return {t[0], last_step};
}

}  // namespace gsf::quad
