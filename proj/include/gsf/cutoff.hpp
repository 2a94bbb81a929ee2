#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <variant>

namespace gsf {

/// Power-law coupling g(k) = k^(-nu), nu >= 0.
struct PowerLawCutoff {
    double nu = 0.5;
};

/// Arbitrary radial coupling g(k) on (0, inf). The optional exponent hints
/// describe g itself: g ~ k^endpoint_exponent_hint near 0 and
/// g ~ k^tail_exponent_hint at infinity. NaN means unknown.
struct RadialCutoff {
    std::function<double(double)> g;
    double tail_exponent_hint = std::numeric_limits<double>::quiet_NaN();
    double endpoint_exponent_hint = std::numeric_limits<double>::quiet_NaN();
};

using Cutoff = std::variant<PowerLawCutoff, RadialCutoff>;

inline void validate_cutoff(const Cutoff& c) {
    if (const auto* p = std::get_if<PowerLawCutoff>(&c)) {
        if (!(p->nu >= 0.0))
            throw std::domain_error("PowerLawCutoff: nu must be >= 0");
    } else if (!std::get<RadialCutoff>(c).g) {
        throw std::domain_error("RadialCutoff: missing coupling function");
    }
}

/// Evaluate g(k); k must be positive.
inline double cutoff_eval(const Cutoff& c, double k) {
    if (const auto* p = std::get_if<PowerLawCutoff>(&c))
        return std::pow(k, -p->nu);
    return std::get<RadialCutoff>(c).g(k);
}

/// Exponent of g near k = 0 (NaN when unknown).
inline double cutoff_endpoint_hint(const Cutoff& c) {
    if (const auto* p = std::get_if<PowerLawCutoff>(&c)) return -p->nu;
    return std::get<RadialCutoff>(c).endpoint_exponent_hint;
}

/// Exponent of g as k -> inf (NaN when unknown).
inline double cutoff_tail_hint(const Cutoff& c) {
    if (const auto* p = std::get_if<PowerLawCutoff>(&c)) return -p->nu;
    return std::get<RadialCutoff>(c).tail_exponent_hint;
}

}  // namespace gsf
