#include "coal/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace coal {

std::size_t step_chain(const MarkovChain& chain, std::size_t state, Rng& rng) {
    const auto& cum = chain.cumulative_rows()[state];
    const double u = rng.next_double();
    return static_cast<std::size_t>(
        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
}

std::size_t sample_stationary_state(const MarkovChain& chain, Rng& rng) {
    const double u = rng.next_double();
    double acc = 0.0;
    for (std::size_t v = 0; v + 1 < chain.size(); ++v) {
        acc += chain.stationary()[v];
        if (u < acc) return v;
    }
    return chain.size() - 1;
}

Word sample_stationary_word(const MarkovChain& chain, std::size_t n, Rng& rng) {
    Word w(n);
    w[0] = sample_stationary_state(chain, rng);
    for (std::size_t j = 1; j < n; ++j) w[j] = step_chain(chain, w[j - 1], rng);
    return w;
}

std::uint64_t sample_meeting_time(const MarkovChain& chain, std::size_t n,
                                  const MeetingInit& init, Rng& rng) {
    Word x = init ? init->u : sample_stationary_word(chain, n, rng);
    Word y = init ? init->v : sample_stationary_word(chain, n, rng);

    // Circular buffer of per-position mismatch flags for the two windows;
    // equality is mismatches == 0, updated in O(1) per step.
    std::vector<char> mismatch(n);
    std::size_t mismatches = 0;
    for (std::size_t j = 0; j < n; ++j) {
        mismatch[j] = x[j] != y[j];
        mismatches += mismatch[j];
    }
    std::uint64_t t = 1;
    if (mismatches == 0) return t;

    std::size_t xs = x.back(), ys = y.back();
    std::size_t head = 0;  // slot of the window position about to expire
    while (t < kHorizon) {
        xs = step_chain(chain, xs, rng);
        ys = step_chain(chain, ys, rng);
        mismatches -= mismatch[head];
        mismatch[head] = xs != ys;
        mismatches += mismatch[head];
        head = (head + 1) % n;
        ++t;
        if (mismatches == 0) return t;
    }
    throw HorizonExceeded("meeting time exceeded safety horizon");
}

CoalescenceRun simulate_coalescence(const NBlockChain& nb, Rng& rng, bool record_pairs,
                                    std::size_t walker_cap) {
    const std::size_t m = nb.size();
    if (m > walker_cap)
        throw CapExceeded("walker count exceeds cap", m);

    CoalescenceRun run;
    run.n = nb.n();
    run.num_walkers_initial = m;
    if (record_pairs) run.pair_meeting_times.assign(m * m, 0);

    // Active clusters ordered by id (= smallest member); one shared
    // trajectory per cluster, tracked by current word id.
    struct Cluster {
        std::size_t id;
        std::size_t word;
        std::vector<std::size_t> members;
    };
    std::vector<Cluster> active(m);
    for (std::size_t i = 0; i < m; ++i) active[i] = {i, i, {i}};

    // Last base symbol per word is all the sampler needs.
    const std::size_t k = nb.base().size();
    std::vector<std::size_t> last(m);
    for (std::size_t i = 0; i < m; ++i) last[i] = nb.words()[i].back();

    std::uint64_t t = 1;
    std::unordered_map<std::size_t, std::size_t> occupant;  // word -> index in `active`
    while (active.size() > 1) {
        if (t >= kHorizon) throw HorizonExceeded("coalescence exceeded safety horizon");
        // Advance every cluster one step, in cluster-id order.
        for (auto& c : active) {
            std::size_t symbol = step_chain(nb.base(), last[c.word], rng);
            c.word = nb.successor(c.word, symbol);
        }
        ++t;
        // Merge all co-occupancy groups; survivors keep the smallest id.
        occupant.clear();
        std::vector<Cluster> next;
        next.reserve(active.size());
        for (auto& c : active) {
            auto [it, fresh] = occupant.try_emplace(c.word, next.size());
            if (fresh) {
                next.push_back(std::move(c));
                continue;
            }
            Cluster& host = next[it->second];
            run.merge_events.push_back({t, std::min(host.id, c.id), std::max(host.id, c.id)});
            if (record_pairs) {
                for (std::size_t a : host.members)
                    for (std::size_t b : c.members) {
                        run.pair_meeting_times[a * m + b] = t;
                        run.pair_meeting_times[b * m + a] = t;
                    }
            }
            host.id = std::min(host.id, c.id);
            host.members.insert(host.members.end(), c.members.begin(), c.members.end());
        }
        active = std::move(next);
    }
    run.coalescence_time = t;
    return run;
}

namespace {

// KMP failure function for streaming pattern matches.
std::vector<std::size_t> kmp_failure(const Word& pattern) {
    std::vector<std::size_t> fail(pattern.size(), 0);
    for (std::size_t i = 1; i < pattern.size(); ++i) {
        std::size_t j = fail[i - 1];
        while (j > 0 && pattern[i] != pattern[j]) j = fail[j - 1];
        if (pattern[i] == pattern[j]) ++j;
        fail[i] = j;
    }
    return fail;
}

}  // namespace

std::uint64_t sample_recurrence_time(const MarkovChain& chain, std::size_t n, Rng& rng) {
    const Word pattern = sample_stationary_word(chain, n, rng);
    const auto fail = kmp_failure(pattern);

    // Stream the same trajectory through the KMP automaton; the pattern is
    // the trajectory's own prefix, so the first full match ends at n (t = 1)
    // and must be skipped.
    std::size_t j = 0;
    std::size_t state = pattern[0];
    for (std::uint64_t pos = 1; pos <= kHorizon; ++pos) {
        std::size_t symbol = pos <= n ? pattern[pos - 1] : (state = step_chain(chain, state, rng));
        if (pos == n) state = pattern.back();
        while (j > 0 && symbol != pattern[j]) j = fail[j - 1];
        if (symbol == pattern[j]) ++j;
        if (j == n) {
            std::uint64_t t = pos - n + 1;
            if (t > 1) return t;
            j = fail[j - 1];
        }
    }
    throw HorizonExceeded("recurrence time exceeded safety horizon");
}

std::uint64_t sample_waiting_time(const MarkovChain& chain, std::size_t n, Rng& rng) {
    const Word pattern = sample_stationary_word(chain, n, rng);
    const auto fail = kmp_failure(pattern);

    std::size_t j = 0;
    std::size_t state = 0;
    for (std::uint64_t pos = 1; pos <= kHorizon; ++pos) {
        std::size_t symbol =
            pos == 1 ? (state = sample_stationary_state(chain, rng))
                     : (state = step_chain(chain, state, rng));
        while (j > 0 && symbol != pattern[j]) j = fail[j - 1];
        if (symbol == pattern[j]) ++j;
        if (j == n) return pos - n + 1;
    }
    throw HorizonExceeded("waiting time exceeded safety horizon");
}

// ---------------------------------------------------------------------------

namespace {

template <typename T, typename Fn>
std::vector<T> run_trials(std::size_t trials, std::uint64_t seed, Exec exec, Fn&& one_trial) {
    std::vector<T> out(trials);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(trials); ++i) {
            Rng rng(RngSpec{seed, static_cast<std::uint64_t>(i)});
            out[static_cast<std::size_t>(i)] = one_trial(rng);
        }
    } else {
        for (std::size_t i = 0; i < trials; ++i) {
            Rng rng(RngSpec{seed, i});
            out[i] = one_trial(rng);
        }
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> run_meeting_trials(const MarkovChain& chain, std::size_t n,
                                              const MeetingInit& init, std::size_t trials,
                                              std::uint64_t seed, Exec exec) {
    return run_trials<std::uint64_t>(trials, seed, exec, [&](Rng& rng) {
        return sample_meeting_time(chain, n, init, rng);
    });
}

std::vector<CoalescenceRun> run_coalescence_trials(const NBlockChain& nb, std::size_t trials,
                                                   std::uint64_t seed, bool record_pairs,
                                                   Exec exec) {
    return run_trials<CoalescenceRun>(trials, seed, exec, [&](Rng& rng) {
        return simulate_coalescence(nb, rng, record_pairs);
    });
}

std::vector<std::uint64_t> run_recurrence_trials(const MarkovChain& chain, std::size_t n,
                                                 std::size_t trials, std::uint64_t seed,
                                                 Exec exec) {
    return run_trials<std::uint64_t>(trials, seed, exec, [&](Rng& rng) {
        return sample_recurrence_time(chain, n, rng);
    });
}

std::vector<std::uint64_t> run_waiting_trials(const MarkovChain& chain, std::size_t n,
                                              std::size_t trials, std::uint64_t seed, Exec exec) {
    return run_trials<std::uint64_t>(trials, seed, exec, [&](Rng& rng) {
        return sample_waiting_time(chain, n, rng);
    });
}

SampleStats summarize(const std::vector<std::uint64_t>& samples) {
    SampleStats s;
    s.count = samples.size();
    if (samples.empty()) return s;
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t v : samples) {
        double x = static_cast<double>(v);
        sum += x;
        sum2 += x * x;
    }
    const double nd = static_cast<double>(samples.size());
    s.mean = sum / nd;
    s.second_moment = sum2 / nd;
    s.variance = samples.size() > 1 ? (sum2 - nd * s.mean * s.mean) / (nd - 1.0) : 0.0;
    s.variance = std::max(s.variance, 0.0);
    s.stderr_mean = std::sqrt(s.variance / nd);
    return s;
}

TailProfile tail_profile(const std::vector<std::uint64_t>& samples, double m_star) {
    TailProfile out;
    std::vector<std::uint64_t> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double nd = static_cast<double>(sorted.size());
    out.dkw_epsilon = std::sqrt(std::log(2.0 / 0.01) / (2.0 * nd));

    for (int decile = 1; decile <= 9; ++decile) {
        std::size_t idx = std::min<std::size_t>(
            sorted.size() - 1, static_cast<std::size_t>(nd * decile / 10.0));
        const double t = static_cast<double>(sorted[idx]);
        const double survival =
            static_cast<double>(sorted.end() -
                                std::upper_bound(sorted.begin(), sorted.end(), sorted[idx])) /
            nd;
        TailDecile row{t, survival, std::exp(-t / (std::exp(1.0) * m_star))};
        out.deciles.push_back(row);
        out.max_violation =
            std::max(out.max_violation, row.empirical_survival - out.dkw_epsilon - row.bound);
    }
    out.violated = out.max_violation > 0.0;
    return out;
}

}  // namespace coal
