#include "coal/chain.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <sstream>

namespace coal {

namespace {

// Mixing check on the boolean support matrix: some power up to the
// Wielandt exponent (k-1)^2 + 1 must be entrywise positive.
bool is_primitive(const std::vector<std::vector<bool>>& support) {
    const std::size_t k = support.size();
    if (k == 1) return support[0][0];
    const std::size_t bound = (k - 1) * (k - 1) + 1;
    std::vector<std::vector<bool>> power = support;
    for (std::size_t exp = 1; exp <= bound; ++exp) {
        bool all_positive = true;
        for (std::size_t i = 0; i < k && all_positive; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (!power[i][j]) { all_positive = false; break; }
        if (all_positive) return true;
        if (exp == bound) break;
        std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l)
                if (power[i][l])
                    for (std::size_t j = 0; j < k; ++j)
                        if (support[l][j]) next[i][j] = true;
        power = std::move(next);
    }
    return false;
}

}  // namespace

std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& transition) {
    const std::size_t k = transition.size();
    // Solve (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    Eigen::MatrixXd a(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                transition[j][i] - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < k; ++j) a(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(j)) = 1.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    b(static_cast<Eigen::Index>(k - 1)) = 1.0;
    Eigen::VectorXd pi = a.partialPivLu().solve(b);

    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = pi(static_cast<Eigen::Index>(i));

    // Residual check on pi P = pi.
    double residual = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += out[i] * transition[i][j];
        residual = std::max(residual, std::abs(s - out[j]));
    }
    if (residual > kStationaryTol)
        throw SolverFailure("stationary distribution residual " + std::to_string(residual) +
                            " exceeds tolerance");
    return out;
}

MarkovChain::MarkovChain(std::vector<std::vector<double>> transition,
                         std::vector<std::string> states)
    : states_(std::move(states)), transition_(std::move(transition)) {
    const std::size_t k = states_.size();
    if (transition_.size() != k)
        throw NotStochastic("matrix has " + std::to_string(transition_.size()) +
                            " rows but " + std::to_string(k) + " labels");
    for (std::size_t u = 0; u < k; ++u) {
        if (transition_[u].size() != k)
            throw NotStochastic("row " + std::to_string(u) + " has wrong length");
        double sum = 0.0;
        for (double x : transition_[u]) {
            if (x < 0.0)
                throw NotStochastic("negative entry in row " + std::to_string(u));
            sum += x;
        }
        if (std::abs(sum - 1.0) > kRowSumTol) {
            std::ostringstream msg;
            msg << "row " << u << " (" << states_[u] << ") sums to " << sum;
            throw NotStochastic(msg.str());
        }
    }

    std::vector<std::vector<bool>> support(k, std::vector<bool>(k, false));
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            support[u][v] = transition_[u][v] > kSupportZero;
    if (!is_primitive(support)) {
        std::size_t bound = k == 1 ? 1 : (k - 1) * (k - 1) + 1;
        throw NotMixing("no entrywise-positive power of the support matrix within the Wielandt bound " +
                        std::to_string(bound) + " (chain is reducible or periodic)");
    }

    stationary_ = stationary_distribution(transition_);

    cum_.resize(k);
    for (std::size_t u = 0; u < k; ++u) {
        cum_[u].resize(k);
        double acc = 0.0;
        for (std::size_t v = 0; v < k; ++v) {
            acc += transition_[u][v];
            cum_[u][v] = acc;
        }
        cum_[u][k - 1] = 1.0;  // guard against round-off at the top
    }
}

MarkovChain validate_chain(const std::vector<std::vector<double>>& matrix,
                           const std::vector<std::string>& labels) {
    return MarkovChain(matrix, labels);
}

double entropy(const MarkovChain& chain) {
    const std::size_t k = chain.size();
    double h = 0.0;
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            double p = chain.p(u, v);
            if (p > kSupportZero) h -= chain.stationary()[u] * p * std::log(p);
        }
    return h;
}

}  // namespace coal
