#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "gsf/hydrogen.hpp"
#include "gsf/pv.hpp"
#include "gsf/shell_oracle.hpp"

using namespace gsf;

namespace {

std::function<double(double)> hydrogen_pair(int m, int n, double nu) {
    const Transition t(m, n);
    return [t, nu](double k) {
        return std::norm(hydrogen::matrix_element_closed(t, k, PowerLawCutoff{nu}));
    };
}

}  // namespace

TEST_CASE("identical seeds reproduce the estimate bit for bit") {
    const auto phi = hydrogen_pair(2, 1, 0.5);
    const double w = hydrogen::bohr_frequency(Transition(2, 1));
    mc::ShellConfig cfg;
    cfg.samples_per_eps = 40000;
    const auto a = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    const auto b = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    REQUIRE(a.estimates.size() == b.estimates.size());
    for (size_t i = 0; i < a.estimates.size(); ++i)
        CHECK(a.estimates[i].value == b.estimates[i].value);

    cfg.seed = 7;
    const auto c = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    CHECK(c.value != a.value);  // different stream, different noise
}

TEST_CASE("serial and parallel samplers agree bit for bit") {
    const auto phi = hydrogen_pair(2, 1, 0.5);
    const double w = hydrogen::bohr_frequency(Transition(2, 1));
    mc::ShellConfig cfg;
    cfg.samples_per_eps = 40000;
    cfg.parallel = true;
    const auto par = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    cfg.parallel = false;
    const auto ser = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, cfg);
    CHECK(par.value == ser.value);
    CHECK(par.error == ser.error);
}

TEST_CASE("sampled principal value brackets the deterministic one") {
    for (auto [m, n, nu] : {std::tuple{2, 1, 0.5}, std::tuple{3, 2, 0.5}, std::tuple{2, 1, 1.0}}) {
        const auto phi = hydrogen_pair(m, n, nu);
        const double w = hydrogen::bohr_frequency(Transition(m, n));
        const auto density = geom::radial_density(phi, geom::Dispersion::Linear, w);
        const auto pp = pv::pp_integral(density, 1e-9);
        REQUIRE(pp.finite);

        const auto est = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w);
        INFO(m, "->", n, " nu=", nu, " mc=", est.value, " pp=", pp.value, " err=", est.error);
        CHECK_FALSE(est.divergence_flag);
        CHECK(std::abs(est.value - pp.value) <= 3.0 * est.error);
    }
}

TEST_CASE("endpoint divergence raises the flag") {
    const auto phi = hydrogen_pair(2, 1, 2.0);  // density ~ (u + w)^-2 at the edge
    const double w = hydrogen::bohr_frequency(Transition(2, 1));
    const auto est = mc::mc_shell_pp(phi, geom::Dispersion::Linear, w);
    CHECK(est.divergence_flag);
    CHECK_FALSE(est.flag_reason.empty());
}

TEST_CASE("config validation") {
    const auto phi = hydrogen_pair(2, 1, 0.5);
    const double w = hydrogen::bohr_frequency(Transition(2, 1));
    CHECK_THROWS_AS(mc::mc_shell_pp(phi, geom::Dispersion::Linear, -1.0, {}), std::domain_error);
    mc::ShellConfig bad;
    bad.samples_per_eps = 10;
    CHECK_THROWS_AS(mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, bad), std::domain_error);
    bad = {};
    bad.epsilons = {0.5, 2.0};  // outside (0, min(omega, 1))
    CHECK_THROWS_AS(mc::mc_shell_pp(phi, geom::Dispersion::Linear, w, bad), std::domain_error);
}

TEST_CASE("volumetric and reduced integrals agree across geometries and densities") {
    auto window = [](double u) { return std::exp(-0.5 * u * u); };
    auto gauss = [](double r) { return std::exp(-r * r); };
    auto expo = [](double r) { return std::exp(-r); };
    const auto hyd = hydrogen_pair(2, 1, 0.5);
    const double w21 = hydrogen::bohr_frequency(Transition(2, 1));

    struct Case {
        std::function<double(double)> phi;
        double omega;
        const char* label;
    };
    const Case cases[] = {{gauss, 1.0, "gaussian"}, {expo, 1.0, "exponential"},
                          {hyd, w21, "hydrogen"}};
    for (auto d : {geom::Dispersion::Linear, geom::Dispersion::Quadratic})
        for (const auto& c : cases) {
            const auto r = mc::radial_reduction_check(c.phi, window, d, c.omega, 1e-4);
            INFO(c.label, d == geom::Dispersion::Linear ? " linear" : " quadratic",
                 " vol=", r.volumetric, " red=", r.reduced, " rel=", r.rel_diff);
            CHECK(r.pass);
        }
}
