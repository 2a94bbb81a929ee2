// Timing comparison of the serial and OpenMP shell sampler on the
// hydrogen 2->1 pair density. Both paths must agree bit for bit; the
// point of this binary is the wall clock ratio.

#include <cmath>
#include <complex>
#include <cstdio>

#include <omp.h>

#include "gsf/cutoff.hpp"
#include "gsf/hydrogen.hpp"
#include "gsf/shell_oracle.hpp"

int main() {
    const gsf::Transition t(2, 1);
    const gsf::Cutoff cutoff = gsf::PowerLawCutoff{0.5};
    auto phi = [&](double k) {
        return std::norm(gsf::hydrogen::matrix_element_closed(t, k, cutoff));
    };
    const double omega = gsf::hydrogen::bohr_frequency(t);

    gsf::mc::ShellConfig cfg;
    cfg.samples_per_eps = 2000000;

    cfg.parallel = false;
    double t0 = omp_get_wtime();
    const auto serial = gsf::mc::mc_shell_pp(phi, gsf::geom::Dispersion::Linear, omega, cfg);
    double t_serial = omp_get_wtime() - t0;

    cfg.parallel = true;
    t0 = omp_get_wtime();
    const auto parallel = gsf::mc::mc_shell_pp(phi, gsf::geom::Dispersion::Linear, omega, cfg);
    double t_parallel = omp_get_wtime() - t0;

    std::printf("threads            %d\n", omp_get_max_threads());
    std::printf("serial             %.3f s  value %.12g +- %.2e\n", t_serial, serial.value,
                serial.error);
    std::printf("openmp             %.3f s  value %.12g +- %.2e\n", t_parallel, parallel.value,
                parallel.error);
    std::printf("speedup            %.2fx\n", t_serial / t_parallel);
    std::printf("bitwise identical  %s\n", serial.value == parallel.value ? "yes" : "NO");
    return serial.value == parallel.value ? 0 : 1;
}
