#pragma once

#include <complex>

#include "gsf/constants.hpp"
#include "gsf/cutoff.hpp"

namespace gsf::hydrogen {

/// E_n = -Z e^2 / (2 a0 n^2). Defaults give -1/(2 n^2).
double bound_energy(int n, const AtomicConstants& c = {});

/// omega_mn = E_m - E_n > 0 for an emission pair (m > n).
double bohr_frequency(const Transition& t, const AtomicConstants& c = {});

/// Associated Laguerre polynomial in the older quantum-chemistry convention:
/// L_{n+l}^{2l+1}(x) as a finite sum with factorial coefficients. This equals
/// -(n+l)! * std::assoc_laguerre(n-l-1, 2l+1, x).
double assoc_laguerre(int n, int l, double x);

/// Normalized s-wave radial wavefunction R_n0(r). Built from the closed-form
/// prefactor and then renormalized by quadrature so that
/// integral of R^2 r^2 dr is exactly 1 at working precision.
double radial_wavefunction(int n, double r, const AtomicConstants& c = {});

/// Y_lm(theta, phi) with the Condon-Shortley phase; supports m < 0.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Expansion coefficient C_s for the closed-form plane-wave matrix element
/// of the pair (t.m, t.n); exact integer combinatorics inside. Returns 0 when
/// the combinatorial range is empty (s < 2 or s > m + n).
double coefficient_C(int s, const Transition& t, const AtomicConstants& c = {});

/// Order of the matrix element's zero at k = 0: the element behaves like
/// c * g(k) * k^(2j) with j = small_k_order(t). The leading Taylor moments
/// of the bracket cancel in pairs; the computed order equals
/// floor((m - n) / 2) for every transition checked (m <= 7), so only
/// neighbouring levels (m = n + 1) have the generic order 0. The value
/// feeds endpoint-integrability thresholds, which a g^2-only rule gets
/// wrong whenever the order is positive.
int small_k_order(const Transition& t, const AtomicConstants& c = {});

/// Radial-profile convention for the quadrature oracle below.
enum class RadialGauge {
    Physical,        // orthonormal R_n0 (argument 2r/(n a0)); the physical wavefunctions
    FormulaVerbatim  // profile e^{-r/2} L_n^1(r) with the closed-form prefactor;
                     // the gauge in which matrix_element_closed is the exact integral
};

/// Closed form of <psi_m00 | g(|k|) e^{ik.q} | psi_n00> as a finite sum over
/// coefficient_C terms. Real-valued; returned as complex per the API.
/// Requires kmag > 0, Z == 1.
std::complex<double> matrix_element_closed(const Transition& t, double kmag, const Cutoff& cutoff,
                                           const AtomicConstants& c = {});

/// Independent quadrature evaluation of the same matrix element:
/// g(k) * integral of R_m(r) R_n(r) sin(kr)/(kr) r^2 dr,
/// with R per the chosen gauge. Requires kmag > 0, Z == 1.
std::complex<double> matrix_element_oracle(const Transition& t, double kmag, const Cutoff& cutoff,
                                           double tol, const AtomicConstants& c = {},
                                           RadialGauge gauge = RadialGauge::Physical);

}  // namespace gsf::hydrogen
