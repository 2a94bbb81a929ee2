#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gsf/constants.hpp"
#include "gsf/cutoff.hpp"
#include "gsf/dispersion.hpp"

namespace gsf::pv {

/// Fate of the plain (untruncated) integral of Phi(u)/u.
enum class PlainVerdict { Finite, DivergentLogarithmic, DivergentEndpoint, DivergentTail };

/// Fate of the principal-value integral.
enum class PvVerdict { Finite, DivergentEndpoint, DivergentTail };

std::string to_string(PlainVerdict v);  // lowercase-hyphenated tokens
std::string to_string(PvVerdict v);

/// Combined classification with the fitted diagnostics that produced it.
struct ConvergenceVerdict {
    PlainVerdict plain = PlainVerdict::Finite;
    PvVerdict principal_value = PvVerdict::Finite;
    double endpoint_exponent = std::numeric_limits<double>::quiet_NaN();  // Phi ~ (u-a)^p
    double tail_exponent = std::numeric_limits<double>::quiet_NaN();      // Phi/u ~ u^p
    double zero_value = std::numeric_limits<double>::quiet_NaN();         // Phi(0)
    bool conclusive = true;  // false when fits were too noisy for a definite call
    std::string diagnostics;
};

/// Result of pp_integral / plain_integral. value/error are valid only when
/// finite is true. log_slope is the fitted coefficient of log(1/eps) for a
/// logarithmically divergent plain integral (it estimates Phi(0)).
struct IntegralResult {
    double value = std::numeric_limits<double>::quiet_NaN();
    double error = std::numeric_limits<double>::quiet_NaN();
    bool finite = false;
    PvVerdict verdict = PvVerdict::Finite;
    PlainVerdict plain_verdict = PlainVerdict::Finite;
    double log_slope = std::numeric_limits<double>::quiet_NaN();
    std::string note;
};

/// Principal value of the integral of Phi(u)/u over (a, inf).
/// The singularity at 0 is removed by the symmetric fold
/// (Phi(u) - Phi(-u))/u on (0, h]; the endpoint and the tail are checked by
/// exponent fits before quadrature, and divergence is reported as a verdict,
/// not an exception. When a >= 0 the integral is proper and computed directly.
IntegralResult pp_integral(const geom::RadialDensity& density, double tol);

/// Plain integral of Phi(u)/u. Finite only when Phi(0) = 0 (detected
/// against a probe-grid scale and confirmed by an eps-scan) or when 0 is
/// outside the support; otherwise DivergentLogarithmic with the fitted
/// log-slope, or an endpoint/tail verdict.
IntegralResult plain_integral(const geom::RadialDensity& density, double tol);

/// Two-sided truncated integral over (a, -eps] u [eps, inf) for each eps.
/// Converges to the principal value as eps -> 0.
std::vector<double> truncated_scan(const geom::RadialDensity& density,
                                   const std::vector<double>& epsilons, double tol);

/// One-sided truncation [eps, inf): diverges like Phi(0) * log(1/eps) when
/// Phi(0) != 0. Used to measure the logarithmic divergence coefficient.
std::vector<double> one_sided_scan(const geom::RadialDensity& density,
                                   const std::vector<double>& epsilons, double tol);

/// Classify an already-reduced density by exponent fits and the probed
/// surface value alone (no analytic shortcut). Used by routes that receive
/// a density rather than a cutoff.
ConvergenceVerdict classify_density(const geom::RadialDensity& density);

/// Classify the gamma integrand built from a cutoff at frequency omega.
/// With a transition, the density is the hydrogen matrix-element density;
/// without, it is the bare coupling density 4 pi r^2 g(r)^2 (Linear case).
/// Power-law cutoffs are classified by the analytic endpoint/tail rules;
/// radial cutoffs fall back to exponent fits (inconclusive fits are
/// reported with conclusive = false, never silently guessed).
ConvergenceVerdict classify(const Cutoff& cutoff, const std::optional<Transition>& t,
                            double omega, geom::Dispersion d, const AtomicConstants& c = {});

/// Per-condition numeric check of the admissibility conditions on g for the
/// pair t: (a1) tail integrability of g(u+w)^2/u^4, (a2) boundedness near the
/// resonance radius, (a3) integrability of g(k)^2 k^2 at k -> 0, (a4) square
/// integrability on compacts. Inconclusive is a first-class outcome.
struct ConditionReport {
    std::string name;
    enum class Status { Pass, Fail, Inconclusive } status = Status::Inconclusive;
    double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    std::string detail;
};
std::vector<ConditionReport> check_cutoff_conditions(const std::function<double(double)>& g,
                                                     const Transition& t, int probes = 24,
                                                     const AtomicConstants& c = {});

}  // namespace gsf::pv
