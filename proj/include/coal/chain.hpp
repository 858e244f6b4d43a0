#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coal/errors.hpp"

namespace coal {

// All entropies and exponents are in nats (natural log) throughout.

// Entries below this are structural zeros for the support graph.
inline constexpr double kSupportZero = 1e-15;

inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kStationaryTol = 1e-10;

/// A validated, mixing, finite-state Markov chain. Immutable after
/// construction; safe to share across threads.
class MarkovChain {
public:
    /// Validates and builds. Throws NotStochastic / NotMixing.
    MarkovChain(std::vector<std::vector<double>> transition,
                std::vector<std::string> states);

    std::size_t size() const { return states_.size(); }
    const std::vector<std::string>& states() const { return states_; }
    double p(std::size_t u, std::size_t v) const { return transition_[u][v]; }
    const std::vector<std::vector<double>>& transition() const { return transition_; }
    const std::vector<double>& stationary() const { return stationary_; }

    /// True where P(u,v) exceeds the structural-zero threshold.
    bool support(std::size_t u, std::size_t v) const {
        return transition_[u][v] > kSupportZero;
    }

    /// Cumulative row sums for inverse-CDF sampling, cum[u][v] = sum P(u, 0..v).
    const std::vector<std::vector<double>>& cumulative_rows() const { return cum_; }

private:
    std::vector<std::string> states_;
    std::vector<std::vector<double>> transition_;
    std::vector<double> stationary_;
    std::vector<std::vector<double>> cum_;
};

/// Validates the matrix and returns a chain with π cached.
MarkovChain validate_chain(const std::vector<std::vector<double>>& matrix,
                           const std::vector<std::string>& labels);

/// Direct linear solve of πP = π, Σπ = 1. Residual ≤ 1e-10 or SolverFailure.
std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& transition);

/// Entropy rate h = −Σ π(u)P(u,v) log P(u,v), in nats.
double entropy(const MarkovChain& chain);

}  // namespace coal
