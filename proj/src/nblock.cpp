#include "coal/nblock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace coal {

double mu_log_prob(const MarkovChain& chain, const Word& word) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    double pi1 = chain.stationary()[word.front()];
    if (pi1 <= kSupportZero) return neg_inf;
    double lp = std::log(pi1);
    for (std::size_t j = 0; j + 1 < word.size(); ++j) {
        double p = chain.p(word[j], word[j + 1]);
        if (p <= kSupportZero) return neg_inf;
        lp += std::log(p);
    }
    return lp;
}

NBlockChain::NBlockChain(const MarkovChain& base, std::size_t n, std::size_t cap)
    : base_(base), n_(n) {
    const std::size_t k = base.size();
    // Level-by-level extension along positive transitions; extending a
    // lex-sorted level in symbol order keeps the next level lex-sorted.
    std::vector<Word> level;
    level.reserve(k);
    for (std::size_t v = 0; v < k; ++v) level.push_back({v});
    for (std::size_t len = 1; len < n; ++len) {
        std::vector<Word> next;
        for (const Word& w : level) {
            for (std::size_t c = 0; c < k; ++c) {
                if (!base.support(w.back(), c)) continue;
                Word ext = w;
                ext.push_back(c);
                next.push_back(std::move(ext));
                if (next.size() > cap)
                    throw CapExceeded("n-block state count exceeds cap at length " +
                                          std::to_string(len + 1),
                                      next.size());
            }
        }
        level = std::move(next);
    }
    words_ = std::move(level);

    pi_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i)
        pi_[i] = std::exp(mu_log_prob(base, words_[i]));

    successors_.assign(words_.size() * k, npos);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        Word shifted(words_[i].begin() + 1, words_[i].end());
        shifted.push_back(0);
        for (std::size_t c = 0; c < k; ++c) {
            if (!base.support(words_[i].back(), c)) continue;
            shifted.back() = c;
            successors_[i * k + c] = word_id(shifted);
        }
    }
}

std::size_t NBlockChain::word_id(const Word& w) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), w);
    if (it == words_.end() || *it != w) return npos;
    return static_cast<std::size_t>(it - words_.begin());
}

double NBlockChain::p(std::size_t u, std::size_t v) const {
    const Word& wu = words_[u];
    const Word& wv = words_[v];
    if (n_ > 1 && !std::equal(wu.begin() + 1, wu.end(), wv.begin())) return 0.0;
    return base_.p(wu.back(), wv.back());
}

std::vector<std::pair<std::size_t, double>> NBlockChain::row(std::size_t u) const {
    std::vector<std::pair<std::size_t, double>> out;
    const std::size_t k = base_.size();
    const std::size_t last = words_[u].back();
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t v = successors_[u * k + c];
        if (v != npos) out.emplace_back(v, base_.p(last, c));
    }
    return out;
}

std::string NBlockChain::label(std::size_t word_id) const {
    std::ostringstream s;
    for (std::size_t j = 0; j < n_; ++j) {
        if (j) s << '-';
        s << base_.states()[words_[word_id][j]];
    }
    return s.str();
}

double log_delta_exact(const MarkovChain& chain, std::size_t n) {
    const std::size_t k = chain.size();
    // x accumulates Q^{n-1} * ones with periodic rescaling; Q(u,v) = P(u,v)^2.
    std::vector<double> x(k, 1.0), y(k);
    double log_scale = 0.0;
    for (std::size_t step = 1; step < n; ++step) {
        for (std::size_t u = 0; u < k; ++u) {
            double s = 0.0;
            for (std::size_t v = 0; v < k; ++v) {
                double p = chain.p(u, v);
                s += p * p * x[v];
            }
            y[u] = s;
        }
        double m = *std::max_element(y.begin(), y.end());
        for (std::size_t u = 0; u < k; ++u) x[u] = y[u] / m;
        log_scale += std::log(m);
    }
    double dot = 0.0;
    for (std::size_t v = 0; v < k; ++v) {
        double pv = chain.stationary()[v];
        dot += pv * pv * x[v];
    }
    return std::log(dot) + log_scale;
}

double delta_enumerate(const MarkovChain& chain, std::size_t n, std::size_t cap) {
    const std::size_t k = chain.size();
    // DFS over positive-probability words, carrying log mu of the prefix.
    double total = 0.0;
    std::size_t count = 0;
    struct Frame { std::size_t state; double log_mu; std::size_t depth; };
    std::vector<Frame> stack;
    for (std::size_t v = k; v-- > 0;)
        stack.push_back({v, std::log(chain.stationary()[v]), 1});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.depth == n) {
            total += std::exp(2.0 * f.log_mu);
            if (++count > cap)
                throw CapExceeded("enumeration exceeds cap", count);
            continue;
        }
        for (std::size_t c = k; c-- > 0;) {
            if (!chain.support(f.state, c)) continue;
            stack.push_back({c, f.log_mu + std::log(chain.p(f.state, c)), f.depth + 1});
        }
    }
    return total;
}

MarkovChain to_markov_chain(const NBlockChain& nb) {
    const std::size_t m = nb.size();
    std::vector<std::vector<double>> p(m, std::vector<double>(m, 0.0));
    for (std::size_t u = 0; u < m; ++u)
        for (auto [v, prob] : nb.row(u)) p[u][v] = prob;
    std::vector<std::string> labels(m);
    for (std::size_t u = 0; u < m; ++u) labels[u] = nb.label(u);
    return MarkovChain(std::move(p), std::move(labels));
}

}  // namespace coal
