#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coal/nblock.hpp"
#include "coal/rng.hpp"

namespace coal {

inline constexpr std::uint64_t kHorizon = 1'000'000'000ULL;  // bug signal, not a statistic
inline constexpr std::size_t kWalkerCapDefault = std::size_t{1} << 16;

/// One transition of the base chain by inverse CDF on the cumulative row.
std::size_t step_chain(const MarkovChain& chain, std::size_t state, Rng& rng);

/// First symbol from π, i.e. a stationary start.
std::size_t sample_stationary_state(const MarkovChain& chain, Rng& rng);

/// A length-n block drawn from μ: first symbol from π, extended by P.
Word sample_stationary_word(const MarkovChain& chain, std::size_t n, Rng& rng);

/// Initial blocks for the two walkers: stationary draws or a fixed pair.
struct PairInit {
    Word u, v;
};
using MeetingInit = std::optional<PairInit>;  // nullopt = Stationary

/// First t >= 1 at which the two length-n sliding windows agree.
/// t = 1 when the initial blocks already coincide.
std::uint64_t sample_meeting_time(const MarkovChain& chain, std::size_t n,
                                  const MeetingInit& init, Rng& rng);

struct MergeEvent {
    std::uint64_t time = 0;
    std::size_t surviving_cluster = 0;  // smallest member id
    std::size_t absorbed_cluster = 0;
};

struct CoalescenceRun {
    std::size_t n = 0;
    std::size_t num_walkers_initial = 0;
    std::uint64_t coalescence_time = 0;
    std::vector<MergeEvent> merge_events;
    // When recorded: row-major num_walkers x num_walkers matrix of first
    // co-occupancy times per initial pair (0 on the diagonal).
    std::vector<std::uint64_t> pair_meeting_times;
};

/// Coalescing random walk with one walker per word of V_n, each realized
/// as a sliding window over an independent base-chain trajectory.
CoalescenceRun simulate_coalescence(const NBlockChain& nb, Rng& rng,
                                    bool record_pairs = false,
                                    std::size_t walker_cap = kWalkerCapDefault);

/// R_n: first t > 1 with x_t^{t+n-1} equal to the initial block x_1^n.
std::uint64_t sample_recurrence_time(const MarkovChain& chain, std::size_t n, Rng& rng);

/// W_n: first t >= 1 with y_t^{t+n-1} equal to x_1^n, x and y independent.
std::uint64_t sample_waiting_time(const MarkovChain& chain, std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Trial batches. Each trial owns stream id = trial index, so the parallel
// and serial runners produce identical output.

enum class Exec { Serial, Parallel };

std::vector<std::uint64_t> run_meeting_trials(const MarkovChain& chain, std::size_t n,
                                              const MeetingInit& init, std::size_t trials,
                                              std::uint64_t seed, Exec exec = Exec::Parallel);

std::vector<CoalescenceRun> run_coalescence_trials(const NBlockChain& nb, std::size_t trials,
                                                   std::uint64_t seed, bool record_pairs = false,
                                                   Exec exec = Exec::Parallel);

std::vector<std::uint64_t> run_recurrence_trials(const MarkovChain& chain, std::size_t n,
                                                 std::size_t trials, std::uint64_t seed,
                                                 Exec exec = Exec::Parallel);

std::vector<std::uint64_t> run_waiting_trials(const MarkovChain& chain, std::size_t n,
                                              std::size_t trials, std::uint64_t seed,
                                              Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------

struct SampleStats {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double stderr_mean = 0.0;
    double second_moment = 0.0;
};

SampleStats summarize(const std::vector<std::uint64_t>& samples);

/// Empirical survival vs exp(-t/(e m*)) at deciles, with a 99% DKW band.
struct TailDecile {
    double t = 0.0;
    double empirical_survival = 0.0;
    double bound = 0.0;
};

struct TailProfile {
    std::vector<TailDecile> deciles;
    double dkw_epsilon = 0.0;
    double max_violation = 0.0;  // max over deciles of (empirical - band - bound)
    bool violated = false;
};

TailProfile tail_profile(const std::vector<std::uint64_t>& samples, double m_star);

}  // namespace coal
