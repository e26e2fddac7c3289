// Timing harness for the backward sweep: OpenMP kernel vs the serial
// reference it must match bit for bit. Run with no arguments for the
// default case or pass  <family> <N> <steps>.
#include "levitc/dp.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#ifdef LEVITC_HAVE_OPENMP
#include <omp.h>
#endif

using namespace levitc;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::string family = argc > 1 ? argv[1] : "merton";
    const int N = argc > 2 ? std::atoi(argv[2]) : 60;
    const int steps = argc > 3 ? std::atoi(argv[3]) : 8;

    ModelSpec model = family == "vg" ? ModelSpec::make_vg(0.1, -0.1, 0.2, 0.1)
                      : family == "diffusion"
                          ? ModelSpec::make_diffusion(0.1, 0.25)
                          : ModelSpec::make_merton(0.1, 0.25, 0.0, 0.5, 0.8);
    MarketSpec market;
    market.S0 = 15.0;
    market.K = 15.0;
    market.T = 1.0;
    market.r = 0.1;
    market.theta_b = 0.01;
    market.theta_s = 0.01;
    market.gamma = 0.04;

    GridSizing sizing;
    if (model.family == Family::vg) sizing.lbar = 43;
    const GridSpec grid = build_grid(model, market, N, sizing);
    const TransitionKernel kernel = transition_kernel(model, grid);

    std::printf("backward sweep: %s N=%d Lbar=%d Mbar=%d, timing %d steps below maturity\n",
                family.c_str(), grid.N, grid.Lbar(), grid.Mbar(), steps);
#ifdef LEVITC_HAVE_OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled at build time; both lanes run serial code\n");
#endif

    ValueSurface surface = terminal_surface(ValueKind::writer, grid, market);

    double t_par = 0.0, t_ser = 0.0;
    for (int s = 0; s < steps; ++s) {
        clock_type::time_point t0 = clock_type::now();
        ValueSurface par = backward_step(surface, kernel, grid, market);
        t_par += seconds_since(t0);

        t0 = clock_type::now();
        ValueSurface ser = backward_step_serial(surface, kernel, grid, market);
        t_ser += seconds_since(t0);

        if (par.W.size() != ser.W.size() ||
            std::memcmp(par.W.data(), ser.W.data(), par.W.size() * sizeof(double)) != 0) {
            std::printf("MISMATCH at step %d: parallel and serial sweeps disagree\n", s);
            return 1;
        }
        surface = std::move(ser);
    }

    std::printf("parallel: %8.3fs   serial: %8.3fs   speedup x%.2f\n", t_par, t_ser,
                t_par > 0.0 ? t_ser / t_par : 0.0);
    std::printf("surfaces identical across all %d steps\n", steps);
    return 0;
}
