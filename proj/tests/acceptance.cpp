// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, next to the check that uses it.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gsf/hydrogen.hpp"
#include "gsf/pv.hpp"
#include "gsf/quad.hpp"
#include "gsf/shell_oracle.hpp"
#include "gsf/susceptivity.hpp"

using namespace gsf;
using std::numbers::pi;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

std::function<double(double)> pair_density_k(int m, int n, double nu) {
    const Transition t(m, n);
    return [t, nu](double k) {
        return std::norm(hydrogen::matrix_element_closed(t, k, PowerLawCutoff{nu}));
    };
}

geom::RadialDensity pair_density(int m, int n, double nu) {
    return geom::radial_density(pair_density_k(m, n, nu), geom::Dispersion::Linear,
                                hydrogen::bohr_frequency(Transition(m, n)));
}

// 1: exponent sweep over three lines, classifier against direct quadrature
void criterion_1() {
    Timer timer;
    std::string detail;
    bool ok = true;
    const double finite_nus[] = {0.0, 0.5, 1.0, 1.25, 1.45};
    const double divergent_nus[] = {1.5, 1.75, 2.0};
    const std::pair<int, int> pairs[] = {{2, 1}, {3, 1}, {3, 2}};
    for (const auto& [m, n] : pairs) {
        auto run = [&](double nu, bool expect_finite) {
            const auto v =
                pv::classify(PowerLawCutoff{nu}, Transition(m, n), 0.0, geom::Dispersion::Linear);
            const bool classifier_finite = v.principal_value == pv::PvVerdict::Finite;
            const auto direct = pv::pp_integral(pair_density(m, n, nu), 1e-8);
            if (classifier_finite != expect_finite || direct.finite != expect_finite) {
                ok = false;
                detail += std::to_string(m) + "->" + std::to_string(n) + " nu=" +
                          std::to_string(nu) + " expected=" +
                          (expect_finite ? "finite" : "divergent") + " classifier=" +
                          (classifier_finite ? "finite" : "divergent") + " direct=" +
                          (direct.finite ? "finite" : "divergent") + "; ";
            }
        };
        for (double nu : finite_nus) run(nu, true);
        for (double nu : divergent_nus) run(nu, false);
    }
    const double sec = timer.seconds();
    if (sec > 60.0) {
        ok = false;
        detail += "took " + std::to_string(sec) + " s (budget 60)";
    }
    report(1, "exponent sweep: classifier and direct quadrature agree on all 24 cases", ok,
           detail);
}

// 2: closed surface value for the pure power cutoff, both evaluation paths
void criterion_2() {
    bool ok = true;
    std::string detail;
    const std::pair<double, double> cases[] = {{0.5, 1.0}, {1.0, 2.0}, {0.0, 0.5}};
    for (const auto& [nu, omega] : cases) {
        const double expect = 4.0 * pi * pi * std::pow(omega, 2.0 - 2.0 * nu);
        const double closed =
            gamma_minus(PowerLawCutoff{nu}, geom::Dispersion::Linear, omega).re;
        RadialCutoff rc;
        rc.g = [nu](double r) { return std::pow(r, -nu); };
        const double generic = gamma_minus(rc, geom::Dispersion::Linear, omega).re;
        if (std::abs(closed - expect) > 1e-10 * expect) {
            ok = false;
            detail += "closed path off at nu=" + std::to_string(nu) + "; ";
        }
        if (std::abs(generic - expect) > 1e-6 * expect) {
            ok = false;
            detail += "generic path off at nu=" + std::to_string(nu) + "; ";
        }
    }
    report(2, "surface term equals 4 pi^2 omega^(2-2nu) on the closed and generic paths", ok,
           detail);
}

// 3: frequency and time domain routes on the hydrogen 2->1 line
void criterion_3() {
    Timer timer;
    bool ok = true;
    std::string detail;
    const auto f = hydrogen_gamma(2, 1, PowerLawCutoff{0.5});
    const auto t = gamma_time_domain_density(pair_density(2, 1, 0.5),
                                             {0.1, 0.05, 0.025, 0.0125}, 1e-8);
    if (!f.im || !t.im) {
        ok = false;
        detail = "a route failed to produce a dispersive part";
    } else {
        const double dre = std::abs(f.re - t.re);
        const double dim = std::abs(std::abs(*f.im) - std::abs(*t.im));
        if (dre > 1e-3 * (1.0 + std::abs(f.re))) {
            ok = false;
            detail += "re gap " + std::to_string(dre) + "; ";
        }
        if (dim > 1e-3 * (1.0 + std::abs(*f.im))) {
            ok = false;
            detail += "im gap " + std::to_string(dim) + "; ";
        }
    }
    const double sec = timer.seconds();
    if (sec > 30.0) {
        ok = false;
        detail += "took " + std::to_string(sec) + " s (budget 30)";
    }
    report(3, "frequency and time domain routes agree on hydrogen 2->1 within 1e-3", ok, detail);
}

// 4: closed matrix element against the direct radial integral. The constant
// is fitted by least squares across the k set rather than read off pointwise
// ratios: both elements have genuine zeros (e.g. the 3->1 element vanishes at
// k = 1), where a pointwise ratio is 0/0 noise but the residual against the
// fitted constant stays meaningful.
void criterion_4() {
    bool ok = true;
    std::string detail;
    for (const auto& [m, n] : {std::pair{2, 1}, std::pair{3, 1}}) {
        const Transition t(m, n);
        double num = 0.0, den = 0.0, scale = 0.0;
        std::vector<std::pair<double, double>> pts;
        for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double closed =
                hydrogen::matrix_element_closed(t, k, PowerLawCutoff{0.5}).real();
            const double direct =
                hydrogen::matrix_element_oracle(t, k, PowerLawCutoff{0.5}, 1e-12, {},
                                                hydrogen::RadialGauge::FormulaVerbatim)
                    .real();
            num += closed * direct;
            den += direct * direct;
            scale = std::max(scale, std::abs(closed));
            pts.emplace_back(closed, direct);
        }
        const double c = num / den;
        double max_resid = 0.0;
        for (const auto& [closed, direct] : pts)
            max_resid = std::max(max_resid, std::abs(closed - c * direct));
        if (max_resid > 1e-6 * scale) {
            ok = false;
            detail += std::to_string(m) + "->" + std::to_string(n) + " residual " +
                      std::to_string(max_resid / scale) + " of scale; ";
        }
        if (std::abs(c - 1.0) > 1e-6) {
            ok = false;
            detail += std::to_string(m) + "->" + std::to_string(n) + " fitted constant " +
                      std::to_string(c) + " != 1; ";
        }
    }
    if (ok) detail = "constant 1.0, rescaling none (direct integral in the closed form's gauge)";
    report(4, "closed matrix element / direct radial integral is k-independent", ok, detail);
}

// 5: logarithmic divergence rate equals the surface value; a vanishing
// surface value makes the plain integral converge to the principal value
void criterion_5() {
    bool ok = true;
    std::string detail;

    const auto plain = pv::plain_integral(pair_density(2, 1, 0.5), 1e-8);
    const double phi0 = 1.4303993719360824;  // 4 pi w^2 |elem(w)|^2 at w = 3/8
    if (plain.finite || plain.plain_verdict != pv::PlainVerdict::DivergentLogarithmic) {
        ok = false;
        detail += "expected logarithmic divergence; ";
    } else if (std::abs(plain.log_slope - phi0) > 0.05 * phi0) {
        ok = false;
        detail += "scan slope " + std::to_string(plain.log_slope) + " vs surface value " +
                  std::to_string(phi0) + "; ";
    }

    geom::RadialDensity engineered;
    engineered.a = -1.0;
    engineered.phi = [](double u) { return u * std::exp(-u * u); };
    const auto p2 = pv::plain_integral(engineered, 1e-8);
    const auto pv2 = pv::pp_integral(engineered, 1e-8);
    if (!p2.finite || !pv2.finite) {
        ok = false;
        detail += "engineered zero-surface case did not converge; ";
    } else if (std::abs(p2.value - pv2.value) > 2e-8 * (1.0 + std::abs(pv2.value))) {
        ok = false;
        detail += "plain vs principal gap " + std::to_string(std::abs(p2.value - pv2.value)) +
                  "; ";
    }
    report(5, "divergence rate matches the surface value; zero surface value removes it", ok,
           detail);
}

// 6: time averaging against the delta limit with a known closed form
void criterion_6() {
    bool ok = true;
    std::string detail;
    auto F = [](double s) { return std::exp(-s * s); };
    auto cosine = [](double t) { return std::cos(t); };
    const auto rows = scaling_limit_demo(F, cosine, 0.0, {0.5, 0.25, 0.125}, 1e-12);
    for (const auto& r : rows) {
        // exact: int exp(-s^2) cos(lambda^2 s) ds = sqrt(pi) exp(-lambda^4/4)
        const double exact = std::sqrt(pi) * std::exp(-std::pow(r.lambda, 4) / 4.0);
        if (std::abs(r.value - exact) > 1e-8) {
            ok = false;
            detail += "lambda=" + std::to_string(r.lambda) + " off by " +
                      std::to_string(std::abs(r.value - exact)) + "; ";
        }
    }
    auto one = [](double) { return 1.0; };
    const auto flat = scaling_limit_demo(F, one, 0.0, {0.5}, 1e-12);
    if (std::abs(flat[0].value - std::sqrt(pi)) > 1e-10) {
        ok = false;
        detail += "constant observable missed sqrt(pi); ";
    }
    report(6, "time averaged observable matches its gaussian closed form to 1e-8", ok, detail);
}

// 7: second order term converges to the drift at order >= 1.8
void criterion_7() {
    bool ok = true;
    std::string detail;
    CorrelationKernel kernel;
    kernel.C = [](double t) { return std::complex<double>(std::exp(t), 0.0); };
    const std::vector<double> lambdas{0.2, 0.1, 0.05};
    const auto rows = second_order_limit(kernel, 1.0, lambdas, 1e-10);
    std::vector<double> lx, ly;
    for (const auto& r : rows) {
        if (std::abs(r.value - (-1.0)) > 2.0 * r.lambda * r.lambda) {
            ok = false;
            detail += "lambda=" + std::to_string(r.lambda) + " residual " +
                      std::to_string(std::abs(r.value + 1.0)) + " > 2 lambda^2; ";
        }
        lx.push_back(std::log(r.lambda));
        ly.push_back(std::log(std::max(r.error, 1e-300)));
    }
    const auto fit = quad::fit_line(lx, ly);
    if (fit.slope < 1.8) {
        ok = false;
        detail += "fitted order " + std::to_string(fit.slope) + " < 1.8; ";
    }
    report(7, "second order term reaches its limit at (at least) second order", ok, detail);
}

// 8: master fields at distinct frequencies decorrelate; the diagonal
// reproduces the covariance integral
void criterion_8() {
    bool ok = true;
    std::string detail;
    CorrelationKernel kernel;
    kernel.C = [](double t) { return std::complex<double>(std::exp(-std::abs(t)), 0.0); };
    const std::vector<double> lambdas{0.5, 0.35, 0.25};

    const auto off = cross_covariance_decay(1.0, 2.0, kernel, lambdas);
    if (std::abs(off.values.back()) > 1e-3) {
        ok = false;
        detail += "off-diagonal |V| = " + std::to_string(std::abs(off.values.back())) +
                  " at the smallest lambda; ";
    }
    const auto on = cross_covariance_decay(1.0, 1.0, kernel, lambdas);
    const double gap = std::abs(on.values.back() - on.diagonal_reference);
    if (gap > 1e-3 * (1.0 + std::abs(on.diagonal_reference))) {
        ok = false;
        detail += "diagonal gap " + std::to_string(gap) + "; ";
    }
    report(8, "distinct resonances decorrelate; the diagonal matches the covariance integral",
           ok, detail);
}

// 9: below the spectrum the decay half is exactly zero
void criterion_9() {
    bool ok = true;
    std::string detail;
    if (gamma_minus(PowerLawCutoff{0.5}, geom::Dispersion::Linear, -1.0).re != 0.0) {
        ok = false;
        detail += "omega = -1 gave a nonzero surface term; ";
    }
    if (gamma_minus(PowerLawCutoff{0.5}, geom::Dispersion::Linear, 0.0).re != 0.0) {
        ok = false;
        detail += "omega = 0 gave a nonzero surface term; ";
    }
    if (hydrogen_gamma(1, 2, PowerLawCutoff{0.5}).re != 0.0) {
        ok = false;
        detail += "absorbing orientation 1->2 gave a nonzero surface term; ";
    }
    report(9, "surface term is exactly zero at and below the spectral edge", ok, detail);
}

// 10: Monte Carlo shell sampler against the deterministic principal value
void criterion_10() {
    bool ok = true;
    std::string detail;
    const std::tuple<int, int, double> corpus[] = {{2, 1, 0.5}, {3, 2, 0.5}, {2, 1, 1.0}};
    for (const auto& [m, n, nu] : corpus) {
        const auto phi = pair_density_k(m, n, nu);
        const double w = hydrogen::bohr_frequency(Transition(m, n));
        const auto pp = pv::pp_integral(pair_density(m, n, nu), 1e-9);
        const auto est = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w);
        if (est.divergence_flag) {
            ok = false;
            detail += "spurious divergence flag on a finite case; ";
        }
        if (std::abs(est.value - pp.value) > 3.0 * est.error) {
            ok = false;
            detail += std::to_string(m) + "->" + std::to_string(n) + " nu=" +
                      std::to_string(nu) + " gap " + std::to_string(std::abs(est.value - pp.value)) +
                      " > 3 x " + std::to_string(est.error) + "; ";
        }
    }

    const auto bad = mc::mc_shell_pp(pair_density_k(2, 1, 2.0), geom::Dispersion::Linear,
                                     hydrogen::bohr_frequency(Transition(2, 1)));
    if (!bad.divergence_flag) {
        ok = false;
        detail += "missing divergence flag at nu = 2; ";
    }

    mc::ShellConfig cfg;
    cfg.samples_per_eps = 40000;
    const auto phi = pair_density_k(2, 1, 0.5);
    const double w = hydrogen::bohr_frequency(Transition(2, 1));
    const auto r1 = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    const auto r2 = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    cfg.parallel = false;
    const auto r3 = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    if (r1.value != r2.value || r1.value != r3.value) {
        ok = false;
        detail += "seeded runs are not bitwise reproducible across repeats/threads; ";
    }
    report(10, "shell sampler brackets the deterministic value, flags divergence, reproduces",
           ok, detail);
}

// 11: radial eigenfunctions are orthonormal
void criterion_11() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 5; ++n) {
        auto f = [n](double r) {
            const double R = hydrogen::radial_wavefunction(n, r);
            return R * R * r * r;
        };
        const double norm = quad::integrate(f, 0.0, 60.0 * n, 1e-12).value;
        if (std::abs(norm - 1.0) > 1e-8) {
            ok = false;
            detail += "norm n=" + std::to_string(n) + " off by " +
                      std::to_string(std::abs(norm - 1.0)) + "; ";
        }
    }
    for (int n = 1; n <= 5; ++n)
        for (int m = n + 1; m <= 5; ++m) {
            auto f = [n, m](double r) {
                return hydrogen::radial_wavefunction(n, r) *
                       hydrogen::radial_wavefunction(m, r) * r * r;
            };
            const double cross = quad::integrate(f, 0.0, 120.0, 1e-12).value;
            if (std::abs(cross) > 1e-8) {
                ok = false;
                detail += "overlap " + std::to_string(m) + "," + std::to_string(n) + " = " +
                          std::to_string(cross) + "; ";
            }
        }
    report(11, "radial eigenfunctions are orthonormal for n <= 5", ok, detail);
}

void guarded(void (*f)(), int idx, const char* what) {
    try {
        f();
    } catch (const std::exception& e) {
        report(idx, what, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    guarded(criterion_1, 1, "exponent sweep");
    guarded(criterion_2, 2, "closed surface value");
    guarded(criterion_3, 3, "two routes");
    guarded(criterion_4, 4, "matrix element ratio");
    guarded(criterion_5, 5, "divergence rate");
    guarded(criterion_6, 6, "time averaging");
    guarded(criterion_7, 7, "second order limit");
    guarded(criterion_8, 8, "cross covariance");
    guarded(criterion_9, 9, "spectral edge zeros");
    guarded(criterion_10, 10, "shell sampler");
    guarded(criterion_11, 11, "orthonormality");
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
