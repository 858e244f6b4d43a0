#pragma once

#include <utility>
#include <vector>

#include "coal/chain.hpp"

namespace coal {

struct PerronPair {
    double eigenvalue = 0.0;
    std::vector<double> eigenvector;  // positive, sums to 1
};

struct PerronOptions {
    std::size_t max_iterations = 1'000'000;
    double rayleigh_tol = 1e-14;
    double residual_tol = 1e-12;  // relative to the max row sum
};

/// Dominant eigenpair of a nonnegative matrix with primitive support.
/// Power iteration from the all-ones vector; deterministic.
PerronPair perron(const std::vector<std::vector<double>>& matrix,
                  const PerronOptions& opts = {});

/// Per-chain scalar invariants: λ = Perron eigenvalue of Q(u,v) = P(u,v)²,
/// L = −log λ, entropy, and the maximal-entropy verdict.
struct SpectralSummary {
    double lambda = 0.0;
    double L = 0.0;        // nats
    double entropy = 0.0;  // nats
    bool is_mme = false;
    double mme_distance = 0.0;
};

inline constexpr double kMmeTolDefault = 1e-9;

SpectralSummary coalescence_exponent(const MarkovChain& chain,
                                     double mme_tol = kMmeTolDefault);

/// Parry test: builds the 0/1 support matrix A, its Perron pair (λ_A, r),
/// the Parry matrix P*(u,v) = A(u,v) r(v) / (λ_A r(u)), and returns
/// (max|P − P*| ≤ tol, max|P − P*|).
std::pair<bool, double> is_measure_of_maximal_entropy(const MarkovChain& chain,
                                                      double tol = kMmeTolDefault);

/// The Parry transition matrix on the chain's support graph.
std::vector<std::vector<double>> parry_matrix(const MarkovChain& chain);

}  // namespace coal
