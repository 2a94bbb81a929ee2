#include "gsf/shell_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "gsf/quad.hpp"

namespace gsf::mc {

namespace {

constexpr double pi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Shell measure in u = w(r) - omega: dk = jac(u) du on the radial part.
struct ShellGeometry {
    geom::Dispersion d;
    double omega;

    double r_of(double u) const {
        const double v = u + omega;
        return d == geom::Dispersion::Linear ? v : std::sqrt(v);
    }
    double jac(double u) const {
        const double v = u + omega;
        if (v <= 0.0) return 0.0;
        return d == geom::Dispersion::Linear ? 4.0 * pi * v * v : 2.0 * pi * std::sqrt(v);
    }
};

// One sampling stratum. Paired strata evaluate the fold
// (W(u) - W(-u))/u instead of W(u)/u, cancelling the near-0 blowup.
struct Stratum {
    double lo = 0.0;
    double hi = 0.0;
    bool paired = false;
};

struct StratumStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    long n = 0;
    double max_abs = 0.0;
    double sum_abs = 0.0;
};

StratumStats run_stratum(const Stratum& st, const ShellGeometry& geo,
                         const std::function<double(double)>& phi, long n_samples,
                         std::uint64_t stream_seed) {
    std::mt19937_64 rng(stream_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double width = st.hi - st.lo;
    StratumStats s;
    for (long i = 0; i < n_samples; ++i) {
        const double u = st.lo + width * unif(rng);
        // Direction sampled to keep the 3-D geometry honest even though the
        // density is radial; it does not enter the radial value.
        (void)unif(rng);  // cos(theta)
        (void)unif(rng);  // azimuth
        // Evaluate the jacobian first: it is exactly 0 outside the shell
        // support (v <= 0), and phi must not be called there (r = 0 is a
        // pole of the hydrogen matrix elements).
        const auto weighted = [&geo, &phi](double uu) {
            const double j = geo.jac(uu);
            return j == 0.0 ? 0.0 : j * phi(geo.r_of(uu));
        };
        double val;
        if (st.paired) {
            val = width * (weighted(u) - weighted(-u)) / u;
        } else {
            val = width * weighted(u) / u;
        }
        s.sum += val;
        s.sum_sq += val * val;
        s.max_abs = std::max(s.max_abs, std::abs(val));
        s.sum_abs += std::abs(val);
        ++s.n;
    }
    return s;
}

std::vector<Stratum> build_strata(double eps, double omega, double u_hi, int strata_budget) {
    // Layout in u: left outer (-omega, -h], paired core [eps, h] (mirrored
    // onto [-h, -eps] through the fold), right outer [h, u_hi].
    const double h = std::min(omega, 1.0);
    std::vector<Stratum> out;
    const int j_core = std::max(4, strata_budget / 2);
    const int j_side = std::max(2, strata_budget / 4);
    if (eps < h) {
        for (int j = 0; j < j_core; ++j) {
            const double a = eps * std::pow(h / eps, double(j) / j_core);
            const double b = eps * std::pow(h / eps, double(j + 1) / j_core);
            out.push_back({a, b, true});
        }
    }
    {  // left outer, clustered toward the endpoint -omega (v = u + omega)
        const double v_hi = std::max(omega - h, 0.0);
        if (v_hi > 0.0) {
            const double v_lo = v_hi * 1e-6;
            out.push_back({-omega, -omega + v_lo, false});
            for (int j = 0; j < j_side; ++j) {
                const double a = v_lo * std::pow(v_hi / v_lo, double(j) / j_side);
                const double b = v_lo * std::pow(v_hi / v_lo, double(j + 1) / j_side);
                out.push_back({-omega + a, -omega + b, false});
            }
        }
    }
    {  // right outer
        const double lo = std::max(eps, h);
        for (int j = 0; j < j_side; ++j) {
            const double a = lo * std::pow(u_hi / lo, double(j) / j_side);
            const double b = lo * std::pow(u_hi / lo, double(j + 1) / j_side);
            out.push_back({a, b, false});
        }
    }
    return out;
}

}  // namespace

ShellResult mc_shell_pp(const std::function<double(double)>& phi, geom::Dispersion d, double omega,
                        const ShellConfig& config) {
    if (!phi) throw std::invalid_argument("mc_shell_pp: missing density");
    if (!(omega > 0.0)) throw std::domain_error("mc_shell_pp: needs a positive resonance frequency");
    std::vector<double> epsilons = config.epsilons;
    if (epsilons.empty()) {
        // Default ladder scaled into the valid range for this frequency.
        const double cap = std::min(omega, 1.0);
        for (double frac : {0.2, 0.1, 0.05, 0.025}) epsilons.push_back(frac * cap);
    }
    if (epsilons.size() < 2) throw std::domain_error("mc_shell_pp: need >= 2 eps values");
    for (double e : epsilons)
        if (!(e > 0.0 && e < std::min(omega, 1.0)))
            throw std::domain_error("mc_shell_pp: eps values must lie in (0, min(omega, 1))");
    if (config.samples_per_eps < 1000) throw std::domain_error("mc_shell_pp: too few samples");
    if (config.strata < 8) throw std::domain_error("mc_shell_pp: need at least 8 strata");

    const ShellGeometry geo{d, omega};
    ShellResult out;
    out.seed = config.seed;

    // Truncation radius: extend until the neglected tail of the integrand
    // jac * phi / u is provably below a tenth of the target tolerance.
    auto tail_f = [&geo, &phi](double u) {
        const double j = geo.jac(u);
        return j == 0.0 ? 0.0 : std::abs(j * phi(geo.r_of(u)) / u);
    };
    double u_hi;
    if (config.r_max > 0.0) {
        u_hi = (d == geom::Dispersion::Linear ? config.r_max : config.r_max * config.r_max) - omega;
        if (!(u_hi > std::max(1.0, omega))) throw std::domain_error("mc_shell_pp: r_max too small");
    } else {
        const double b = 4.0 * std::max(1.0, omega);
        const auto fit = quad::fit_power_law(tail_f, b, 100.0 * b);
        u_hi = 100.0 * b;
        if (fit.valid && fit.slope < -1.0 - 1e-3) {
            while (u_hi < 1e9) {
                const double bound = tail_f(u_hi) * u_hi / (-1.0 - fit.slope);
                if (bound < 0.1 * config.target_tol || bound == 0.0) break;
                u_hi *= 2.0;
            }
        } else if (fit.valid) {
            out.divergence_flag = true;
            out.flag_reason = "tail of the integrand is not integrable (fitted exponent " +
                              std::to_string(fit.slope) + ")";
        }
    }
    out.r_max = d == geom::Dispersion::Linear ? u_hi + omega : std::sqrt(u_hi + omega);

    std::vector<double> eps_sorted(epsilons);
    std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<double>());

    int dominated_strata = 0;
    for (size_t ei = 0; ei < eps_sorted.size(); ++ei) {
        const double eps = eps_sorted[ei];
        const auto strata = build_strata(eps, omega, u_hi, config.strata);
        const long per_stratum = std::max(16L, config.samples_per_eps / (long)strata.size());
        std::vector<StratumStats> stats(strata.size());

        // Per-stratum streams keyed by (seed, eps index, stratum index):
        // the merge below runs in stratum order, so thread count cannot
        // change the result and the serial path is bit-identical.
        if (config.parallel) {
#pragma omp parallel for schedule(dynamic)
            for (long j = 0; j < (long)strata.size(); ++j) {
                const std::uint64_t stream =
                    splitmix64(splitmix64(config.seed ^ (0x51ed2701ULL + ei)) + (std::uint64_t)j);
                stats[j] = run_stratum(strata[j], geo, phi, per_stratum, stream);
            }
        } else {
            for (long j = 0; j < (long)strata.size(); ++j) {
                const std::uint64_t stream =
                    splitmix64(splitmix64(config.seed ^ (0x51ed2701ULL + ei)) + (std::uint64_t)j);
                stats[j] = run_stratum(strata[j], geo, phi, per_stratum, stream);
            }
        }

        double total = 0.0, var = 0.0;
        for (size_t j = 0; j < strata.size(); ++j) {
            const auto& s = stats[j];
            const double mean = s.sum / s.n;
            total += mean;
            const double sample_var = std::max(0.0, s.sum_sq / s.n - mean * mean);
            var += sample_var / s.n;
            // One sample carrying most of a stratum's mass is the classic
            // infinite-variance signature.
            if (s.n >= 64 && s.sum_abs > 0.0 && s.max_abs > 0.5 * s.sum_abs) ++dominated_strata;
        }
        out.estimates.push_back({total, std::sqrt(var), eps, per_stratum * (long)strata.size()});
    }

    // eps -> 0 extrapolation over the per-eps estimates.
    std::vector<double> xs, ys;
    for (const auto& e : out.estimates) {
        xs.push_back(e.eps);
        ys.push_back(e.value);
    }
    const auto ex = quad::extrapolate_to_zero(xs, ys);
    out.value = ex.value;
    double se_max = 0.0, se_min = 1e300;
    for (const auto& e : out.estimates) {
        se_max = std::max(se_max, e.std_error);
        se_min = std::min(se_min, e.std_error);
    }
    out.error = ex.error + 2.0 * se_max;

    if (dominated_strata >= 2) {
        out.divergence_flag = true;
        if (out.flag_reason.empty())
            out.flag_reason = "single samples dominate " + std::to_string(dominated_strata) +
                              " strata (heavy-tailed weights)";
    }
    // Cross-eps drift also signals a non-convergent principal value. A
    // convergent estimate carries truncation bias ~ C * eps, so consecutive
    // gaps shrink by the same factor as the eps steps; a logarithmic
    // divergence keeps the gaps constant and a power divergence grows them.
    // Rate-compare each gap against the previous one, above the noise.
    for (size_t i = 2; i < out.estimates.size(); ++i) {
        const auto& a = out.estimates[i - 2];
        const auto& b = out.estimates[i - 1];
        const auto& c = out.estimates[i];
        const double gap_prev = std::abs(a.value - b.value);
        const double gap = std::abs(b.value - c.value);
        const double step_prev = a.eps - b.eps;
        const double rate = step_prev > 0.0 ? (b.eps - c.eps) / step_prev : 1.0;
        const double noise = 5.0 * (a.std_error + b.std_error + c.std_error);
        if (gap > noise && gap > gap_prev * std::max(0.8, 1.5 * rate)) {
            if (!out.divergence_flag) {
                out.divergence_flag = true;
                out.flag_reason = "estimates do not converge as eps shrinks";
            }
        }
    }
    return out;
}

ReductionCheck radial_reduction_check(const std::function<double(double)>& phi,
                                      const std::function<double(double)>& psi, geom::Dispersion d,
                                      double omega, double tol) {
    if (!phi || !psi) throw std::invalid_argument("radial_reduction_check: missing function");
    if (!(tol > 0.0)) throw std::domain_error("radial_reduction_check: tol must be positive");

    auto wdisp = [d](double r) { return d == geom::Dispersion::Linear ? r : r * r; };
    auto term = [&](double r) { return phi(r) * psi(wdisp(r) - omega) * r * r; };

    // truncation radius by probing the integrand's decay
    double r_hi = 8.0 * std::max(1.0, omega);
    double scale = 0.0;
    for (double f : {0.1, 0.3, 1.0}) scale = std::max(scale, std::abs(term(f * r_hi)));
    while (r_hi < 1e4 && std::abs(term(r_hi)) > 1e-16 * std::max(scale, 1e-300)) r_hi *= 1.6;

    // genuinely 3-D: nested adaptive quadrature in spherical coordinates
    const double qtol = std::min(1e-10, tol * 1e-3);
    auto volumetric_f = [&](double r) {
        auto over_theta = [&](double theta) {
            auto over_phi_az = [&](double) { return 1.0; };
            const double az = quad::integrate(over_phi_az, 0.0, 2.0 * pi, 1e-12).value;
            return std::sin(theta) * az;
        };
        const double ang = quad::integrate(over_theta, 0.0, pi, 1e-12).value;
        return term(r) * ang / (4.0 * pi);  // ang == 4 pi; keep the plumbing honest
    };
    const double vol = 4.0 * pi * quad::integrate(volumetric_f, 0.0, r_hi, qtol).value;

    // reduced 1-D form against the same psi
    const auto density = geom::radial_density(phi, d, omega);
    const double u_hi = wdisp(r_hi) - omega;
    auto reduced_f = [&density, &psi](double u) { return density.phi(u) * psi(u); };
    const double red = quad::integrate_singular(reduced_f, density.a, u_hi, qtol).value;

    ReductionCheck out;
    out.volumetric = vol;
    out.reduced = red;
    out.rel_diff = std::abs(vol - red) / std::max(1.0, std::abs(red));
    out.pass = out.rel_diff <= tol;
    return out;
}

}  // namespace gsf::mc
