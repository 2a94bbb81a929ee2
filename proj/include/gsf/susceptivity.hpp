#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsf/constants.hpp"
#include "gsf/cutoff.hpp"
#include "gsf/dispersion.hpp"
#include "gsf/pv.hpp"

namespace gsf {

/// Which limit produced the number: the frequency-domain split
/// (surface term + principal value) or the damped time integral.
enum class Route { FrequencyDomain, TimeDomain };

std::string to_string(Route r);  // "frequency-domain" / "time-domain"

/// Generalized susceptivity gamma_minus = re + i*im for one resonance.
/// re >= 0 always; re == 0 exactly when the resonance surface is empty.
/// im is absent when the principal-value part diverges.
struct Susceptivity {
    double re = 0.0;
    std::optional<double> im;
    Route route = Route::FrequencyDomain;
    pv::ConvergenceVerdict verdict;
    double error_estimate = 0.0;
};

/// Lifetime/level-shift split of the damping operator coefficient.
struct ItoDecomposition {
    double decay_rate = 0.0;    // 2 * re
    double lifetime = 0.0;      // 1 / decay_rate, +inf when re == 0
    double energy_shift = 0.0;  // im
    std::string convention;     // sign relation between the two routes
};

/// Reservoir correlation kernel C(t), defined for t <= 0; the t > 0 values
/// follow from stationarity, C(-t) = conj(C(t)).
struct CorrelationKernel {
    std::function<std::complex<double>(double)> C;  // evaluable for t <= 0
    double eps = 0.0;                               // damping used when sampling

    /// Evaluate at any t using the stationarity extension.
    std::complex<double> at(double t) const;

    /// Kernel of a reduced density: C(t) = integral of Phi(u) e^{-i t u} du.
    static CorrelationKernel from_density(const geom::RadialDensity& density, double tol = 1e-9);
};

/// gamma_minus for a bare coupling density phi(r) = g(r)^2 at frequency
/// omega: re = pi * delta_pairing, im = -(principal value). The verdict of
/// the underlying integrals is attached; a divergent principal value leaves
/// im empty instead of inventing a number.
Susceptivity gamma_minus(const Cutoff& cutoff, geom::Dispersion d, double omega, double tol = 1e-8);

/// gamma_minus for the hydrogen pair (m, n) with coupling density
/// |matrix element|^2. m < n is the reversed (absorption) orientation:
/// omega < 0 and re == 0 exactly. Requires m != n, both >= 1.
Susceptivity hydrogen_gamma(int m, int n, const Cutoff& cutoff,
                            geom::Dispersion d = geom::Dispersion::Linear, double tol = 1e-8,
                            const AtomicConstants& c = {});

/// Same numbers through the damped time integral: gamma_eps has
/// re = integral of Phi(u) eps/(eps^2+u^2) and im = integral of
/// Phi(u) u/(eps^2+u^2), extrapolated over the eps sequence to eps -> 0.
/// Note the time route's im carries the opposite sign of the
/// frequency route's; compare magnitudes across routes.
Susceptivity gamma_minus_time_domain(const Cutoff& cutoff, geom::Dispersion d, double omega,
                                     const std::vector<double>& eps_sequence = {0.1, 0.05, 0.025,
                                                                                0.0125},
                                     double tol = 1e-8);

/// Time route on an already-reduced density (hydrogen or engineered cases).
Susceptivity gamma_time_domain_density(const geom::RadialDensity& density,
                                       const std::vector<double>& eps_sequence, double tol = 1e-8);

/// Split a finite susceptivity into decay rate / lifetime / shift.
/// Throws std::domain_error when im is absent (divergent input).
ItoDecomposition ito_decomposition(const Susceptivity& s);

/// One row of a convergence demonstration table.
struct DemoRow {
    double lambda = 0.0;
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;  // |value - reference|
};

/// Delta-family demo: (1/lambda^2) F((tau - t)/lambda^2) tested against a
/// smooth psi converges to psi(t) * integral of F. Rows per lambda.
std::vector<DemoRow> scaling_limit_demo(const std::function<double(double)>& F,
                                        const std::function<double(double)>& psi, double t,
                                        const std::vector<double>& lambdas, double tol = 1e-12);

/// Rescaled second-order term -lambda^2 * integral over the ordered time
/// pairs of C, at t = tau/lambda^2, against its limit -tau * integral of C
/// over (-inf, 0]. Real parts tabulated (the demo kernels are real).
std::vector<DemoRow> second_order_limit(const CorrelationKernel& kernel, double tau,
                                        const std::vector<double>& lambdas, double tol = 1e-10);

/// Cross-covariance of two master fields at frequencies w and wp under the
/// time rescaling, with fixed unit-mass Gaussian windows. Off the diagonal
/// (w != wp) the value decays to 0; on the diagonal it converges to
/// (window overlap) * (covariance integral at w), returned as reference.
struct CrossCovarianceResult {
    std::vector<double> lambdas;
    std::vector<std::complex<double>> values;
    std::complex<double> diagonal_reference{0.0, 0.0};
};
CrossCovarianceResult cross_covariance_decay(double w, double wp, const CorrelationKernel& kernel,
                                             const std::vector<double>& lambdas, double tol = 1e-8);

}  // namespace gsf
