// Command line front end for the susceptivity library.
//
// Subcommands:
//   gamma         one generalized susceptivity value (hydrogen pair or bare cutoff)
//   classify      convergence verdict and fitted exponents, no value computation
//   table         transition x nu grid, CSV or JSON, rows computed in parallel
//   demo          scaling limit demonstrations (time averaging, second order, cross terms)
//   oracle-check  Monte Carlo shell estimate against the deterministic integral
//
// Exit codes: 0 success / finite, 2 the requested quantity is divergent,
// 1 usage or numeric failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsf/constants.hpp"
#include "gsf/cutoff.hpp"
#include "gsf/dispersion.hpp"
#include "gsf/hydrogen.hpp"
#include "gsf/pv.hpp"
#include "gsf/shell_oracle.hpp"
#include "gsf/susceptivity.hpp"
#include "gsf/table_io.hpp"

namespace {

struct Options {
    std::string transition;               // "m,n"
    std::vector<std::string> transitions; // table may take several
    double nu = 0.5;
    bool nu_given = false;
    std::string preset;                   // gaussian | exponential | lorentzian
    double omega = 1.0;
    bool omega_given = false;
    std::string dispersion = "linear";
    std::string route = "frequency";
    std::string nu_grid;
    std::string format = "csv";
    std::string out;
    std::string out_dir;
    double tol = 1e-8;
    std::uint64_t seed = 20260815ULL;
    long samples = 200000;
    std::string demo_which = "time-average";
    double hbar = 1.0, charge = 1.0, mass = 1.0;
};

gsf::geom::Dispersion parse_dispersion(const std::string& s) {
    if (s == "linear") return gsf::geom::Dispersion::Linear;
    if (s == "quadratic") return gsf::geom::Dispersion::Quadratic;
    throw CLI::ValidationError("--dispersion", "expected 'linear' or 'quadratic'");
}

std::pair<int, int> parse_transition(const std::string& s) {
    int m = 0, n = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%d,%d%c", &m, &n, &extra) != 2)
        throw CLI::ValidationError("--transition", "expected 'm,n' with integers");
    if (n < 1 || m <= n)
        throw CLI::ValidationError("--transition",
                                   "needs upper level m greater than lower level n >= 1");
    return {m, n};
}

std::vector<double> parse_nu_grid(const std::string& s) {
    double start = 0, stop = 0, step = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3 ||
        !(step > 0.0) || stop < start)
        throw CLI::ValidationError("--nu-grid", "expected 'start:stop:step' with step > 0");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
    return out;
}

gsf::RadialCutoff make_preset(const std::string& name) {
    if (name == "gaussian")
        return {[](double r) { return std::exp(-r * r); }, std::nan(""), 0.0};
    if (name == "exponential")
        return {[](double r) { return std::exp(-r); }, std::nan(""), 0.0};
    if (name == "lorentzian")
        return {[](double r) { return 1.0 / (1.0 + r * r); }, -2.0, 0.0};
    throw CLI::ValidationError("--radial-cutoff",
                               "expected 'gaussian', 'exponential' or 'lorentzian'");
}

gsf::Cutoff make_cutoff(const Options& o) {
    if (!o.preset.empty()) return make_preset(o.preset);
    return gsf::PowerLawCutoff{o.nu};
}

gsf::AtomicConstants make_constants(const Options& o) {
    if (o.hbar == 1.0 && o.charge == 1.0 && o.mass == 1.0) return {};
    auto c = gsf::AtomicConstants::from_fundamental(o.hbar, o.charge, o.mass);
    std::fprintf(stderr, "note: constants override in effect, bohr radius a0 = %s\n",
                 gsf::io::fmt17(c.a0).c_str());
    return c;
}

void write_out(const Options& o, const std::string& payload) {
    if (o.out.empty()) {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::filesystem::path p(o.out);
    if (p.is_relative()) {
        std::string dir = o.out_dir;
        if (dir.empty())
            if (const char* env = std::getenv("GSF_OUTDIR")) dir = env;
        if (!dir.empty()) p = std::filesystem::path(dir) / p;
    }
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open output file " + p.string());
    f << payload;
}

// hydrogen pair density for the time domain route, |<m| e^{ikx} |n>|^2 on the shell
gsf::geom::RadialDensity hydrogen_pair_density(int m, int n, const gsf::Cutoff& cutoff,
                                               gsf::geom::Dispersion d, double omega,
                                               const gsf::AtomicConstants& c) {
    gsf::Transition t(std::max(m, n), std::min(m, n));
    auto phi = [t, cutoff, c](double k) {
        const auto e = gsf::hydrogen::matrix_element_closed(t, k, cutoff, c);
        return std::norm(e);
    };
    return gsf::geom::radial_density(phi, d, omega);
}

int run_gamma(const Options& o) {
    const auto c = make_constants(o);
    const auto d = parse_dispersion(o.dispersion);
    const auto cutoff = make_cutoff(o);

    gsf::Susceptivity s;
    double omega;
    if (!o.transition.empty()) {
        auto [m, n] = parse_transition(o.transition);
        omega = gsf::hydrogen::bohr_frequency(gsf::Transition(m, n), c);
        if (o.route == "time") {
            s = gsf::gamma_time_domain_density(hydrogen_pair_density(m, n, cutoff, d, omega, c),
                                               {0.1, 0.05, 0.025, 0.0125}, o.tol);
        } else {
            s = gsf::hydrogen_gamma(m, n, cutoff, d, o.tol, c);
        }
    } else {
        if (!o.omega_given)
            throw CLI::ValidationError("gamma", "needs --transition or --omega");
        omega = o.omega;
        s = o.route == "time" ? gsf::gamma_minus_time_domain(cutoff, d, omega,
                                                             {0.1, 0.05, 0.025, 0.0125}, o.tol)
                              : gsf::gamma_minus(cutoff, d, omega, o.tol);
    }

    std::printf("route = %s\n", to_string(s.route).c_str());
    std::printf("omega = %s\n", gsf::io::fmt17(omega).c_str());
    std::printf("re = %s\n", gsf::io::fmt17(s.re).c_str());
    if (s.im)
        std::printf("im = %s\n", gsf::io::fmt17(*s.im).c_str());
    else
        std::printf("im = divergent\n");
    std::printf("verdict = %s\n", to_string(s.verdict.principal_value).c_str());
    std::printf("error-estimate = %s\n", gsf::io::fmt17(s.error_estimate).c_str());
    if (s.im && std::isfinite(s.re)) {
        const auto ito = gsf::ito_decomposition(s);
        std::printf("decay-rate = %s\n", gsf::io::fmt17(ito.decay_rate).c_str());
        std::printf("lifetime = %s\n", gsf::io::fmt17(ito.lifetime).c_str());
        std::printf("energy-shift = %s\n", gsf::io::fmt17(ito.energy_shift).c_str());
    }
    if (!s.verdict.diagnostics.empty())
        std::printf("diagnostics = %s\n", s.verdict.diagnostics.c_str());
    return s.im && std::isfinite(s.re) ? 0 : 2;
}

int run_classify(const Options& o) {
    const auto c = make_constants(o);
    const auto d = parse_dispersion(o.dispersion);
    const auto cutoff = make_cutoff(o);

    std::optional<gsf::Transition> pair;
    double omega = o.omega;
    if (!o.transition.empty()) {
        auto [m, n] = parse_transition(o.transition);
        pair = gsf::Transition(m, n);
        omega = gsf::hydrogen::bohr_frequency(*pair, c);
    } else if (!o.omega_given) {
        throw CLI::ValidationError("classify", "needs --transition or --omega");
    }

    const auto v = gsf::pv::classify(cutoff, pair, omega, d, c);
    std::printf("plain = %s\n", to_string(v.plain).c_str());
    std::printf("principal-value = %s\n", to_string(v.principal_value).c_str());
    std::printf("endpoint-exponent = %s\n", gsf::io::fmt17(v.endpoint_exponent).c_str());
    std::printf("tail-exponent = %s\n", gsf::io::fmt17(v.tail_exponent).c_str());
    std::printf("surface-value = %s\n", gsf::io::fmt17(v.zero_value).c_str());
    std::printf("conclusive = %s\n", v.conclusive ? "yes" : "no");
    if (!v.diagnostics.empty()) std::printf("diagnostics = %s\n", v.diagnostics.c_str());

    if (pair && std::holds_alternative<gsf::RadialCutoff>(cutoff)) {
        const auto& rc = std::get<gsf::RadialCutoff>(cutoff);
        for (const auto& rep : gsf::pv::check_cutoff_conditions(rc.g, *pair, 24, c)) {
            const char* status = rep.status == gsf::pv::ConditionReport::Status::Pass   ? "pass"
                                 : rep.status == gsf::pv::ConditionReport::Status::Fail ? "fail"
                                                                                        : "inconclusive";
            std::printf("condition %s = %s (%s)\n", rep.name.c_str(), status, rep.detail.c_str());
        }
    }
    return v.principal_value == gsf::pv::PvVerdict::Finite ? 0 : 2;
}

int run_table(const Options& o) {
    const auto c = make_constants(o);
    const auto d = parse_dispersion(o.dispersion);
    if (!o.preset.empty())
        throw CLI::ValidationError("table", "sweeps the power law exponent; no radial preset here");

    std::vector<std::pair<int, int>> pairs;
    if (o.transitions.empty())
        pairs = {{2, 1}, {3, 1}, {3, 2}};
    else
        for (const auto& t : o.transitions) pairs.push_back(parse_transition(t));

    std::vector<double> nus =
        o.nu_grid.empty() ? std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0} : parse_nu_grid(o.nu_grid);

    struct Job {
        int m, n;
        double nu;
    };
    std::vector<Job> jobs;
    for (const auto& [m, n] : pairs)
        for (double nu : nus) jobs.push_back({m, n, nu});

    std::vector<gsf::io::TableRow> rows(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < (long)jobs.size(); ++i) {
        const auto& j = jobs[i];
        gsf::io::TableRow row;
        row.m = j.m;
        row.n = j.n;
        row.nu = j.nu;
        try {
            const auto s =
                gsf::hydrogen_gamma(j.m, j.n, gsf::PowerLawCutoff{j.nu}, d, o.tol, c);
            row.omega_mn = gsf::hydrogen::bohr_frequency(gsf::Transition(j.m, j.n), c);
            row.re = s.re;
            row.im = s.im;
            row.verdict = to_string(s.verdict.principal_value);
            row.err = s.error_estimate;
            row.route = to_string(s.route);
        } catch (const std::exception& e) {
            row.re = std::nan("");
            row.verdict = "error";
            row.err = std::nan("");
            row.route = to_string(gsf::Route::FrequencyDomain);
        }
        rows[i] = row;
    }

    gsf::io::ConfigEcho echo;
    echo.emplace_back("command", "table");
    echo.emplace_back("dispersion", o.dispersion);
    echo.emplace_back("route", "frequency-domain");
    std::string tr;
    for (const auto& [m, n] : pairs) tr += (tr.empty() ? "" : ";") + std::to_string(m) + "," +
                                           std::to_string(n);
    echo.emplace_back("transitions", tr);
    echo.emplace_back("nu-grid", o.nu_grid.empty() ? "default" : o.nu_grid);
    echo.emplace_back("tol", gsf::io::fmt17(o.tol));
    echo.emplace_back("seed", std::to_string(o.seed));
    echo.emplace_back("a0", gsf::io::fmt17(c.a0));

    if (o.format == "json")
        write_out(o, gsf::io::emit_json(rows, echo));
    else if (o.format == "csv")
        write_out(o, gsf::io::emit_csv(rows, echo));
    else
        throw CLI::ValidationError("--format", "expected 'csv' or 'json'");
    return 0;
}

int run_demo(const Options& o) {
    if (o.demo_which == "time-average") {
        auto F = [](double s) { return std::exp(-s * s); };
        auto psi = [](double t) { return 1.0 / (1.0 + t * t); };
        const auto rows = gsf::scaling_limit_demo(F, psi, 1.0, {0.5, 0.25, 0.125, 0.0625}, 1e-12);
        std::printf("time averaged observable against the delta limit\n");
        std::printf("%10s %22s %22s %12s\n", "lambda", "value", "reference", "error");
        for (const auto& r : rows)
            std::printf("%10g %22.15g %22.15g %12.3e\n", r.lambda, r.value, r.reference, r.error);
        return 0;
    }
    if (o.demo_which == "second-order") {
        gsf::CorrelationKernel kernel;
        kernel.C = [](double t) { return std::complex<double>(std::exp(t), 0.0); };
        const auto rows = gsf::second_order_limit(kernel, 1.0, {0.2, 0.1, 0.05}, 1e-10);
        std::printf("second order term against its drift limit\n");
        std::printf("%10s %22s %22s %12s\n", "lambda", "value", "reference", "error");
        for (const auto& r : rows)
            std::printf("%10g %22.15g %22.15g %12.3e\n", r.lambda, r.value, r.reference, r.error);
        return 0;
    }
    if (o.demo_which == "cross-covariance") {
        gsf::CorrelationKernel kernel;
        kernel.C = [](double t) { return std::complex<double>(std::exp(-std::abs(t)), 0.0); };
        const auto r = gsf::cross_covariance_decay(1.0, 2.0, kernel, {0.5, 0.35, 0.25}, 1e-8);
        std::printf("cross covariance of distinct resonances, diagonal reference %s\n",
                    gsf::io::fmt17(r.diagonal_reference.real()).c_str());
        std::printf("%10s %22s %22s\n", "lambda", "|value|", "re(value)");
        for (size_t i = 0; i < r.lambdas.size(); ++i)
            std::printf("%10g %22.15g %22.15g\n", r.lambdas[i], std::abs(r.values[i]),
                        r.values[i].real());
        return 0;
    }
    throw CLI::ValidationError("--which",
                               "expected 'time-average', 'second-order' or 'cross-covariance'");
}

int run_oracle_check(const Options& o) {
    const auto c = make_constants(o);
    const auto d = parse_dispersion(o.dispersion);
    const auto cutoff = make_cutoff(o);
    if (o.transition.empty())
        throw CLI::ValidationError("oracle-check", "needs --transition");
    auto [m, n] = parse_transition(o.transition);
    const double omega = gsf::hydrogen::bohr_frequency(gsf::Transition(m, n), c);

    gsf::Transition t(m, n);
    auto phi = [t, cutoff, c](double k) {
        return std::norm(gsf::hydrogen::matrix_element_closed(t, k, cutoff, c));
    };

    gsf::mc::ShellConfig cfg;
    cfg.seed = o.seed;
    cfg.samples_per_eps = o.samples;
    const auto mc = gsf::mc::mc_shell_pp(phi, d, omega, cfg);
    std::printf("monte-carlo = %s +- %s (seed %llu, r_max %g)\n",
                gsf::io::fmt17(mc.value).c_str(), gsf::io::fmt17(mc.error).c_str(),
                (unsigned long long)mc.seed, mc.r_max);
    if (mc.divergence_flag) {
        std::printf("flag = %s\n", mc.flag_reason.c_str());
        return 2;
    }

    const auto density = gsf::geom::radial_density(phi, d, omega);
    const auto pp = gsf::pv::pp_integral(density, o.tol);
    if (!pp.finite) {
        std::printf("deterministic integral is divergent (%s)\n", to_string(pp.verdict).c_str());
        return 2;
    }
    std::printf("deterministic = %s +- %s\n", gsf::io::fmt17(pp.value).c_str(),
                gsf::io::fmt17(pp.error).c_str());
    const double gap = std::abs(mc.value - pp.value);
    const bool ok = gap <= 3.0 * std::max(mc.error, 1e-12);
    std::printf("gap = %s (%s)\n", gsf::io::fmt17(gap).c_str(),
                ok ? "within 3 sigma" : "OUTSIDE 3 sigma");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized susceptivity factors from system-reservoir models"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an ini file (key=value)");

    Options o;
    app.add_option("--hbar", o.hbar, "Planck constant over 2 pi");
    app.add_option("--charge", o.charge, "electron charge");
    app.add_option("--mass", o.mass, "electron mass");

    auto add_common = [&o](CLI::App* sub, bool with_transition) {
        if (with_transition)
            sub->add_option("--transition", o.transition, "hydrogen levels 'm,n' with m > n");
        auto* nu = sub->add_option("--power-cutoff", o.nu, "power law exponent nu of |k|^-nu");
        auto* preset = sub->add_option("--radial-cutoff", o.preset,
                                       "named cutoff: gaussian, exponential, lorentzian");
        nu->excludes(preset);
        preset->excludes(nu);
        sub->add_option("--dispersion", o.dispersion, "shell geometry: linear or quadratic");
        sub->add_option("--tol", o.tol, "target tolerance");
    };

    auto* gamma = app.add_subcommand("gamma", "compute one susceptivity value");
    add_common(gamma, true);
    gamma->add_option("--omega", o.omega, "bare resonance frequency")
        ->each([&o](const std::string&) { o.omega_given = true; });
    gamma->add_option("--route", o.route, "frequency or time");

    auto* classify = app.add_subcommand("classify", "convergence verdict only");
    add_common(classify, true);
    classify->add_option("--omega", o.omega, "bare resonance frequency")
        ->each([&o](const std::string&) { o.omega_given = true; });

    auto* table = app.add_subcommand("table", "transition x nu grid");
    add_common(table, false);
    table->add_option("--transition", o.transitions, "hydrogen levels 'm,n', repeatable");
    table->add_option("--nu-grid", o.nu_grid, "exponent grid 'start:stop:step'");
    table->add_option("--format", o.format, "csv or json");
    table->add_option("--out", o.out, "output file (default stdout)");
    table->add_option("--out-dir", o.out_dir, "directory for relative --out (or env GSF_OUTDIR)");
    table->add_option("--seed", o.seed, "seed echoed into the config header");

    auto* demo = app.add_subcommand("demo", "scaling limit demonstrations");
    demo->add_option("--which", o.demo_which,
                     "time-average, second-order or cross-covariance");

    auto* oracle = app.add_subcommand("oracle-check", "Monte Carlo against deterministic");
    add_common(oracle, true);
    oracle->add_option("--seed", o.seed, "Monte Carlo seed");
    oracle->add_option("--samples", o.samples, "samples per eps value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gamma->parsed()) return run_gamma(o);
        if (classify->parsed()) return run_classify(o);
        if (table->parsed()) return run_table(o);
        if (demo->parsed()) return run_demo(o);
        if (oracle->parsed()) return run_oracle_check(o);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
