#pragma once

#include <cmath>
#include <stdexcept>

namespace gsf {

/// Physical constants of the bound system. Defaults are atomic-style units
/// (a0 = e = mass = 1, Z = 1) so energies come out as -1/(2 n^2).
struct AtomicConstants {
    double a0 = 1.0;    // Bohr radius
    double e = 1.0;     // elementary charge
    double mass = 1.0;  // electron mass
    int Z = 1;          // nuclear charge number

    /// Build the set from fundamental constants, a0 = hbar^2 / (mass e^2).
    /// With CGS values this reproduces a0 ~ 0.53e-8 cm.
    static AtomicConstants from_fundamental(double hbar, double e, double mass, int Z = 1) {
        if (hbar <= 0.0 || e <= 0.0 || mass <= 0.0 || Z < 1)
            throw std::domain_error("from_fundamental: constants must be positive, Z >= 1");
        return AtomicConstants{hbar * hbar / (mass * e * e), e, mass, Z};
    }

    void validate() const {
        if (a0 <= 0.0 || e <= 0.0 || mass <= 0.0 || Z < 1)
            throw std::domain_error("AtomicConstants: a0, e, mass must be positive and Z >= 1");
    }
};

/// Principal/orbital/magnetic quantum numbers. Matrix elements in this
/// library are s-wave only, so most call sites require l == 0.
struct QuantumNumbers {
    int n = 1;
    int l = 0;
    int m = 0;

    void validate() const {
        if (n < 1 || l < 0 || l >= n || m < -l || m > l)
            throw std::domain_error("QuantumNumbers: need n >= 1, 0 <= l < n, |m| <= l");
    }
};

/// Ordered level pair m -> n for an emission line; m > n >= 1 enforced.
struct Transition {
    int m = 2;  // upper level
    int n = 1;  // lower level

    Transition() = default;
    Transition(int upper, int lower) : m(upper), n(lower) { validate(); }

    void validate() const {
        if (!(m > n && n >= 1))
            throw std::domain_error("Transition: require m > n >= 1");
    }
};

}  // namespace gsf
