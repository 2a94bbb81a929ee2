#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace gsf::geom {

/// Dispersion law of the reservoir in 3 dimensions.
enum class Dispersion {
    Linear,    // w(k) = |k|
    Quadratic  // w(k) = |k|^2
};

/// One-dimensional reduced density Phi(u) of a radial 3-D density phi(|k|)
/// against the surface w(k) - omega = u: Phi(u) du is the shell measure.
/// Support is (a, inf) with a = -omega; the singular point of interest is 0.
struct RadialDensity {
    std::function<double(double)> phi;  // Phi(u), evaluable for u > a
    double a = 0.0;                     // left endpoint of support
    double singular_point = 0.0;
    // Advisory exponent estimates (NaN when unknown):
    double endpoint_exponent = std::numeric_limits<double>::quiet_NaN();  // Phi ~ (u-a)^p near a
    double tail_exponent = std::numeric_limits<double>::quiet_NaN();      // Phi ~ u^q at infinity
};

/// Reduce a radial 3-D density to the 1-D shell density.
///   Linear:    Phi(u) = 4 pi (u+omega)^2 phi(u+omega),        a = -omega
///   Quadratic: Phi(u) = 2 pi sqrt(u+omega) phi(sqrt(u+omega)), a = -omega
/// phi_endpoint_hint / phi_tail_hint describe phi itself (phi ~ r^p near 0,
/// phi ~ r^q at infinity) and are translated into the Phi exponents above.
RadialDensity radial_density(std::function<double(double)> phi, Dispersion d, double omega,
                             double phi_endpoint_hint = std::numeric_limits<double>::quiet_NaN(),
                             double phi_tail_hint = std::numeric_limits<double>::quiet_NaN());

/// Surface term Phi(0): the density paired against the resonance surface
/// w(k) = omega. Exactly 0 when the surface is empty (omega <= 0 for Linear,
/// omega < 0 for Quadratic). At omega == 0 the limit Phi(0+) is probed
/// numerically; a diverging limit throws std::domain_error.
double delta_pairing(const std::function<double(double)>& phi, Dispersion d, double omega);

/// Taylor coefficients of Phi about 0: c_j = Phi^(j)(0) / j!, j = 0..N.
struct AsymptoticCoefficients {
    std::vector<double> c;
    std::vector<double> err;  // error estimates per coefficient
    std::string note;         // non-empty when roundoff or limited smoothness bit
};

/// Central differences with step-halving extrapolation; the ladder stops
/// early when corrections start growing (roundoff floor). Base step is
/// 1e-2 * max(1, |scale|) where scale is the distance from 0 to a.
/// Requires a < 0 (so 0 is interior) and 0 <= N <= 6; N > 6 is refused
/// because the roundoff amplification h^-N makes the result meaningless.
AsymptoticCoefficients asymptotic_coefficients(const RadialDensity& density, int N);

}  // namespace gsf::geom
