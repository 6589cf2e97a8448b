// Benchmark: serial reference loop vs the OpenMP trial kernel on the same
// batch, verifying the two produce identical records before timing them.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tbai/presets.hpp"
#include "tbai/sim.hpp"

namespace {

double time_batch(const tbai::Instance& instance, std::int64_t trials, std::uint64_t seed,
                  int parallelism, tbai::BatchOutput& out) {
    auto start = std::chrono::steady_clock::now();
    out = tbai::run_batch(instance, tbai::Algorithm::TLucb, trials, seed, parallelism);
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main(int argc, char** argv) {
    std::int64_t trials = 2000;
    int n_arms = 8;
    std::uint64_t seed = 20240901;
    if (argc > 1) trials = std::atoll(argv[1]);
    if (argc > 2) n_arms = std::atoi(argv[2]);

    tbai::Instance instance{
        tbai::BanditEnv{}, tbai::make_bai(n_arms), 0.1, 0.05, 1.0, 10'000'000, {}};
    for (int i = 0; i < n_arms; ++i) {
        instance.env.arms.push_back(
            tbai::DistributionSpec::gaussian(1.0 - 0.4 * i / (n_arms - 1.0), 1.0));
    }

    tbai::BatchOutput serial;
    double t_serial = time_batch(instance, trials, seed, 1, serial);
    std::cout << "serial        " << t_serial << " s  (" << trials / t_serial << " trials/s)\n";

#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    for (int threads = 2; threads <= max_threads; threads *= 2) {
        tbai::BatchOutput parallel;
        double t_par = time_batch(instance, trials, seed, threads, parallel);
        bool identical = parallel.summary == serial.summary && parallel.trials == serial.trials;
        std::cout << "omp x" << threads << (threads < 10 ? "        " : "       ") << t_par
                  << " s  (" << trials / t_par << " trials/s)  speedup " << t_serial / t_par
                  << "  identical=" << (identical ? "yes" : "NO") << "\n";
        if (!identical) {
            std::cerr << "parallel batch diverged from the serial reference\n";
            return 1;
        }
    }
    return 0;
}
