#pragma once

#include <vector>

#include "coal/nblock.hpp"

namespace coal {

inline constexpr std::size_t kProductCapDefault = 1'000'000;

/// Exact expected pairwise meeting times on an n-block chain.
/// Convention: walkers occupy their starts at t = 1, so E m(u,u) = 1.
struct MeetingTimeTable {
    std::size_t n = 0;
    std::size_t num_states = 0;
    std::vector<double> expectations;  // row-major num_states x num_states, symmetric
    double m_star = 0.0;               // max entry
    double m_bar = 0.0;                // pi_n (x) pi_n weighted average

    double at(std::size_t u, std::size_t v) const {
        return expectations[u * num_states + v];
    }
};

/// Solves E(u,v) = 1 + Σ P_n(u,c) P_n(v,d) E(c,d) with E ≡ 1 on the
/// diagonal. Direct sparse factorization up to 1e5 product states,
/// damped fixed-point iteration beyond (residual ≤ 1e-10 either way).
MeetingTimeTable meeting_time_table(const NBlockChain& nb,
                                    std::size_t cap = kProductCapDefault);

/// One row of the sandwich report 1/(3Δ_n) ≤ m̄_n ≤ m_n* ≤ K n / Δ_n.
struct SandwichRow {
    std::size_t n = 0;
    double delta_n = 0.0;
    double lower = 0.0;     // 1 / (3 delta_n)
    double m_bar = 0.0;
    double m_star = 0.0;
    double upper_ref = 0.0; // n / delta_n
    double k_n = 0.0;       // m_star * delta_n / n, must stay bounded
    bool bar_le_star = false;
    bool lower_le_bar = false;
};

/// Exact tables for each n in the range, with the inequality flags.
/// The lower bound is only asserted for n >= n_min (it holds for large n).
std::vector<SandwichRow> check_sandwich(const MarkovChain& chain,
                                        const std::vector<std::size_t>& n_range,
                                        std::size_t cap = kProductCapDefault);

inline constexpr std::size_t kSandwichNMin = 4;

}  // namespace coal
