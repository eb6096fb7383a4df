// Benchmark: compiled average-fidelity kernel vs the serial per-node
// reference, across grid sizes. Also reports the kernel's agreement with the
// reference, since the fast path exists only because it is provably the same
// computation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "teleopt/runner.hpp"

using namespace teleopt;

namespace {

double time_of(int reps, const std::function<double()>& f, double& last) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) last = f();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return dt / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 20;

    // a representative adaptive protocol: the published bit-flip table at p = 0.6
    const NoiseConfig noise{NoiseModel::BitFlip, 0.6, NoisePlacement::AliceChannelQubit};
    const ProtocolParams params =
        reconstruct_params(load_reference_table(NoiseModel::BitFlip), 0.6);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: off\n");
#endif
    std::printf("%8s %14s %14s %9s %12s\n", "grid", "reference (ms)", "kernel (ms)", "speedup",
                "|diff|");

    for (const int n : {24, 64, 128, 256}) {
        const FidelityGrid grid = FidelityGrid::midpoint(n, n);
        double f_ref = 0, f_ker = 0;
        const int ref_reps = n > 64 ? 1 : reps;
        const double t_ref =
            time_of(ref_reps, [&] { return average_fidelity_reference(params, noise, grid); },
                    f_ref);
        const double t_ker =
            time_of(reps * 10, [&] { return average_fidelity(params, noise, grid); }, f_ker);
        std::printf("%5dx%-3d %14.3f %14.4f %8.0fx %12.2e\n", n, n, t_ref * 1e3, t_ker * 1e3,
                    t_ref / t_ker, std::abs(f_ref - f_ker));
    }

    // optimizer-shaped workload: one full hill climb on the reward grid
    const FidelityGrid reward = FidelityGrid::midpoint(24, 24);
    const Objective obj = [&](const ProtocolParams& p) {
        return average_fidelity(p, noise, reward);
    };
    ProtocolParams init = bell_baseline();
    init.variant = Variant::FullyAdaptive;
    OptimizerConfig cfg;
    const auto t0 = std::chrono::steady_clock::now();
    const OptResult r = hill_climb(obj, init, cfg);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("hill climb, 3000 iterations on 24x24: %.2f s (%.1f us/eval), best F = %.6f\n", dt,
                dt / (cfg.iterations + 1) * 1e6, r.fidelity);
    return 0;
}
