#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "coal/chain.hpp"

namespace coal {

/// A length-n word of base-chain state indices with μ(word) > 0.
using Word = std::vector<std::size_t>;

inline constexpr std::size_t kNBlockCapDefault = std::size_t{1} << 20;

/// log μ(u) = log π(u_1) + Σ log P(u_j, u_{j+1}); −inf if any factor is 0.
double mu_log_prob(const MarkovChain& chain, const Word& word);

/// Explicit materialization of the n-block chain (V_n, P_n).
/// Words are stored in lexicographic order by state index; immutable.
class NBlockChain {
public:
    NBlockChain(const MarkovChain& base, std::size_t n, std::size_t cap = kNBlockCapDefault);

    const MarkovChain& base() const { return base_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<Word>& words() const { return words_; }
    const std::vector<double>& pi() const { return pi_; }  // pi_n(u) = mu(u)

    /// Successor word id when symbol c is appended, or npos if P(u_n, c) = 0.
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
    std::size_t successor(std::size_t word_id, std::size_t symbol) const {
        return successors_[word_id * base_.size() + symbol];
    }

    /// P_n(u, v): P(u_n, v_n) when u_2^n = v_1^{n-1}, else 0.
    double p(std::size_t u, std::size_t v) const;

    /// Sparse row of P_n: (successor id, probability) pairs.
    std::vector<std::pair<std::size_t, double>> row(std::size_t u) const;

    std::size_t word_id(const Word& w) const;  // npos if not in V_n

    /// Word rendered as hyphen-joined base-state labels.
    std::string label(std::size_t word_id) const;

private:
    MarkovChain base_;  // owned copy: safe against temporaries at call sites
    std::size_t n_;
    std::vector<Word> words_;
    std::vector<double> pi_;
    std::vector<std::size_t> successors_;  // size() * |V| lookup table
};

/// Δ_n via the closed form (π∘π)ᵀ Q^{n−1} 𝟙, Q(u,v) = P(u,v)².
/// Returned in log space; linear cost in n with periodic rescaling.
double log_delta_exact(const MarkovChain& chain, std::size_t n);

inline double delta_exact(const MarkovChain& chain, std::size_t n) {
    return std::exp(log_delta_exact(chain, n));
}

/// Brute-force oracle: enumerates V_n and sums μ(u)².
double delta_enumerate(const MarkovChain& chain, std::size_t n,
                       std::size_t cap = kNBlockCapDefault);

/// The n-block chain re-expressed as a plain MarkovChain (round-trips
/// through every chain-level operation).
MarkovChain to_markov_chain(const NBlockChain& nb);

}  // namespace coal
