// Compares the serial reference trial loop against the OpenMP runner on
// identical workloads and asserts the outputs match.

#include <chrono>
#include <cstdio>
#include <vector>

#include "coal/montecarlo.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    using namespace coal;
    MarkovChain uniform({{0.5, 0.5}, {0.5, 0.5}}, {"a", "b"});
    const std::uint64_t seed = 2024;

    std::printf("%-28s %10s %10s %8s %7s\n", "workload", "serial_s", "omp_s", "speedup", "match");
    for (std::size_t n : {4, 6, 8}) {
        NBlockChain nb(uniform, n);
        const std::size_t trials = 4000;

        auto t0 = std::chrono::steady_clock::now();
        auto serial = run_coalescence_trials(nb, trials, seed, false, Exec::Serial);
        double ts = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        auto parallel = run_coalescence_trials(nb, trials, seed, false, Exec::Parallel);
        double tp = seconds_since(t0);

        bool match = serial.size() == parallel.size();
        for (std::size_t i = 0; match && i < serial.size(); ++i)
            match = serial[i].coalescence_time == parallel[i].coalescence_time;

        char name[64];
        std::snprintf(name, sizeof(name), "coalescence n=%zu x%zu", n, trials);
        std::printf("%-28s %10.3f %10.3f %8.2f %7s\n", name, ts, tp, ts / tp,
                    match ? "yes" : "NO");
        if (!match) return 1;
    }

    for (std::size_t n : {8, 12}) {
        const std::size_t trials = 20000;
        auto t0 = std::chrono::steady_clock::now();
        auto serial = run_meeting_trials(uniform, n, std::nullopt, trials, seed, Exec::Serial);
        double ts = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        auto parallel = run_meeting_trials(uniform, n, std::nullopt, trials, seed, Exec::Parallel);
        double tp = seconds_since(t0);

        bool match = serial == parallel;
        char name[64];
        std::snprintf(name, sizeof(name), "meeting n=%zu x%zu", n, trials);
        std::printf("%-28s %10.3f %10.3f %8.2f %7s\n", name, ts, tp, ts / tp,
                    match ? "yes" : "NO");
        if (!match) return 1;
    }
    return 0;
}
