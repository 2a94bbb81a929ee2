#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gsf/dispersion.hpp"

namespace gsf::mc {

/// One truncated estimate at a fixed eps.
struct ShellEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double eps = 0.0;
    long samples = 0;
};

struct ShellConfig {
    // Empty = {0.2, 0.1, 0.05, 0.025} scaled by min(omega, 1), so the default
    // works for transitions whose frequency is below the largest fraction.
    std::vector<double> epsilons;
    long samples_per_eps = 200000;
    std::uint64_t seed = 20260815;
    double r_max = 0.0;       // 0 = choose from the tail so the neglected part is small
    double target_tol = 1e-3; // drives the automatic r_max choice
    int strata = 64;
    bool parallel = true;     // serial reference path when false; same bits either way
};

struct ShellResult {
    double value = 0.0;       // eps -> 0 extrapolation
    double error = 0.0;       // extrapolation remainder + statistical error
    bool divergence_flag = false;
    std::string flag_reason;
    std::vector<ShellEstimate> estimates;
    std::uint64_t seed = 0;
    double r_max = 0.0;
};

/// Stratified Monte-Carlo estimate of the principal value of the 3-D
/// integral of phi(|k|)/(w(k) - omega) over the truncated ball, by sampling
/// shells in u = w(k) - omega. The strata adjacent to u = 0 are paired
/// antisymmetrically so the would-be singular contributions cancel pathwise.
/// Per-stratum RNG streams are derived from (seed, stratum index) and merged
/// in stratum order, so results are bitwise reproducible and identical
/// between the serial and OpenMP paths.
ShellResult mc_shell_pp(const std::function<double(double)>& phi, geom::Dispersion d, double omega,
                        const ShellConfig& config = {});

/// Compare the full spherical 3-D integral of phi(|k|) psi(w(k) - omega)
/// against the reduced 1-D integral of Phi(u) psi(u).
struct ReductionCheck {
    double volumetric = 0.0;
    double reduced = 0.0;
    double rel_diff = 0.0;
    bool pass = false;
};
ReductionCheck radial_reduction_check(const std::function<double(double)>& phi,
                                      const std::function<double(double)>& psi, geom::Dispersion d,
                                      double omega, double tol);

}  // namespace gsf::mc
