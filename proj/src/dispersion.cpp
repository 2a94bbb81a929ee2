#include "gsf/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gsf::geom {

namespace {
constexpr double pi = std::numbers::pi;

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}
}  // namespace

RadialDensity radial_density(std::function<double(double)> phi, Dispersion d, double omega,
                             double phi_endpoint_hint, double phi_tail_hint) {
    if (!phi) throw std::invalid_argument("radial_density: missing density function");
    RadialDensity out;
    out.a = -omega;
    out.singular_point = 0.0;
    if (d == Dispersion::Linear) {
        out.phi = [phi, omega](double u) {
            const double r = u + omega;
            if (r <= 0.0) return 0.0;  // outside the support (a, inf)
            const double p = phi(r);
            // evaluate the coupling first: when it has died off, skip the
            // jacobian so r^2 overflow at extreme abscissae cannot make 0*inf
            if (p == 0.0) return 0.0;
            const double v = 4.0 * pi * r * r * p;
            // At r below ~1e-106 a power-law coupling overflows before the
            // r^2 jacobian can pull the product back down, even when the
            // true product r^(2-2nu) is finite. Adaptive quadrature probes
            // that deep; the mass it loses here is ~r^(3-2nu), far below
            // any tolerance we run at. Divergence detection is unaffected
            // because it fits exponents at moderate distances.
            return std::isfinite(v) ? v : 0.0;
        };
        out.endpoint_exponent = 2.0 + phi_endpoint_hint;
        out.tail_exponent = 2.0 + phi_tail_hint;
    } else {
        out.phi = [phi, omega](double u) {
            const double r2 = u + omega;
            if (r2 <= 0.0) return 0.0;
            const double r = std::sqrt(r2);
            const double p = phi(r);
            if (p == 0.0) return 0.0;
            const double v = 2.0 * pi * r * p;
            // same overflow scrub as the linear branch
            return std::isfinite(v) ? v : 0.0;
        };
        out.endpoint_exponent = 0.5 * (1.0 + phi_endpoint_hint);
        out.tail_exponent = 0.5 * (1.0 + phi_tail_hint);
    }
    return out;
}

double delta_pairing(const std::function<double(double)>& phi, Dispersion d, double omega) {
    if (!phi) throw std::invalid_argument("delta_pairing: missing density function");
    if (omega > 0.0) {
        if (d == Dispersion::Linear) return 4.0 * pi * omega * omega * phi(omega);
        const double r = std::sqrt(omega);
        return 2.0 * pi * r * phi(r);
    }
    if (omega < 0.0) return 0.0;  // empty resonance surface
    // omega == 0: the surface degenerates to the origin. Probe the shell
    // density's limit; it must vanish (phi growing slower than the shell
    // volume shrinks), otherwise the pairing is not defined.
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 2; i <= 7; ++i) {
        const double delta = std::pow(10.0, -i);
        const double shell = d == Dispersion::Linear
                                 ? 4.0 * pi * delta * delta * phi(delta)
                                 : 2.0 * pi * std::sqrt(delta) * phi(std::sqrt(delta));
        if (!std::isfinite(shell))
            throw std::domain_error("delta_pairing: shell density not finite near the origin");
        if (have_prev && std::abs(shell) > std::abs(prev) * 1.0001 && std::abs(shell) > 1e-300)
            throw std::domain_error(
                "delta_pairing: omega = 0 with a density too singular at the origin; "
                "the surface value does not vanish");
        prev = shell;
        have_prev = true;
    }
    return 0.0;
}

AsymptoticCoefficients asymptotic_coefficients(const RadialDensity& density, int N) {
    if (!density.phi) throw std::invalid_argument("asymptotic_coefficients: missing density");
    if (N < 0) throw std::domain_error("asymptotic_coefficients: N must be >= 0");
    if (N > 6)
        throw std::domain_error(
            "asymptotic_coefficients: N > 6 refused, h^-N roundoff amplification makes the "
            "result meaningless");
    if (!(density.a < 0.0))
        throw std::domain_error("asymptotic_coefficients: 0 must be interior to the support");

    const double scale = std::max(1.0, -density.a);
    AsymptoticCoefficients out;
    out.c.resize(N + 1);
    out.err.resize(N + 1);

    out.c[0] = density.phi(0.0);
    out.err[0] = std::abs(out.c[0]) * 1e-15;

    double fact = 1.0;
    for (int n = 1; n <= N; ++n) {
        fact *= n;
        // Wider base step for higher orders; keep the stencil inside (a, -a).
        double h_base = 1e-2 * scale * std::pow(2.0, std::max(0, n - 2));
        h_base = std::min(h_base, -density.a / (n + 1.0));
        // n-th central difference at levels h, h/2, h/4, h/8.
        std::vector<double> d_at_level;
        for (int k = 0; k < 4; ++k) {
            const double h = h_base * std::pow(0.5, k);
            double s = 0.0;
            for (int j = 0; j <= n; ++j) {
                const double w = binom(n, j) * (j % 2 ? -1.0 : 1.0);
                s += w * density.phi((0.5 * n - j) * h);
            }
            d_at_level.push_back(s / std::pow(h, n));
        }
        // Richardson in h^2 with early stop: successive corrections must
        // shrink; the first growth marks the roundoff floor and we keep the
        // value just before it.
        double best = d_at_level[0];
        double best_err = std::abs(d_at_level.size() > 1 ? d_at_level[1] - d_at_level[0] : best);
        std::vector<double> row = d_at_level;
        double prev_corr = std::numeric_limits<double>::infinity();
        bool stopped = false;
        for (size_t j = 1; j < row.size() && !stopped; ++j) {
            const double w4 = std::pow(4.0, double(j));
            for (size_t i = 0; i + j < row.size(); ++i) row[i] = (w4 * row[i + 1] - row[i]) / (w4 - 1.0);
            const double corr = std::abs(row[0] - best);
            if (corr <= prev_corr) {
                best = row[0];
                best_err = corr;
                prev_corr = corr;
            } else {
                stopped = true;
                if (out.note.empty())
                    out.note = "roundoff floor reached at order " + std::to_string(n);
            }
        }
        out.c[n] = best / fact;
        out.err[n] = best_err / fact;
        if (std::isfinite(out.c[n]) && out.err[n] > 0.1 * std::abs(out.c[n]) && out.c[n] != 0.0 &&
            out.note.empty())
            out.note = "limited accuracy at order " + std::to_string(n);
    }
    return out;
}

}  // namespace gsf::geom
