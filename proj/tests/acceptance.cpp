// Acceptance suite: one pass/fail line per criterion. Exits nonzero if
// any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "coal/meeting.hpp"
#include "coal/montecarlo.hpp"
#include "coal/spectral.hpp"
#include "coal/sweep.hpp"
#include "corpus.hpp"

using namespace coal;
using namespace coal::testing;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    if (!ok) ++failures;
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                error.empty() ? "" : " -- exception: ", error.c_str());
    std::fflush(stdout);
}

double ols_slope(const std::vector<std::pair<double, double>>& pts) {
    double mx = 0.0, my = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : pts) { mx += x; my += y; }
    mx /= double(pts.size());
    my /= double(pts.size());
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    return sxy / sxx;
}

}  // namespace

int main() {
    // 1. Spectral exactness against closed forms.
    criterion(1, "spectral exactness (uniform, biased, golden mean)", [] {
        SpectralSummary u = coalescence_exponent(uniform2());
        SpectralSummary b = coalescence_exponent(biased75());
        SpectralSummary g = coalescence_exponent(golden_mean());
        return std::abs(u.L - 0.6931471805599453) <= 1e-12 &&
               std::abs(u.entropy - 0.6931471805599453) <= 1e-12 &&
               std::abs(b.L - 0.47000362924573563) <= 1e-12 &&
               std::abs(b.entropy - 0.5623351446188083) <= 1e-12 &&
               std::abs(g.L - 0.4812118250596035) <= 1e-9 &&
               std::abs(g.entropy - 0.4812118250596035) <= 1e-9;
    });

    // 2. Trichotomy over the corpus.
    criterion(2, "L/h trichotomy on >= 20 corpus chains", [] {
        auto chains = corpus();
        if (chains.size() < 20) return false;
        for (const auto& [name, chain] : chains) {
            SpectralSummary s = coalescence_exponent(chain);
            if (s.L < -1e-12) return false;
            if (s.L > s.entropy + 1e-9) return false;
            if ((chain.size() == 1) != (s.L == 0.0)) return false;
            if (s.is_mme != (std::abs(s.L - s.entropy) <= 1e-9)) return false;
        }
        return true;
    });

    // 3. Delta oracle equivalence.
    criterion(3, "delta_exact vs delta_enumerate, corpus, n <= 12", [] {
        for (const auto& [name, chain] : corpus()) {
            for (std::size_t n = 1; n <= 12; ++n) {
                double oracle;
                try {
                    oracle = delta_enumerate(chain, n);
                } catch (const CapExceeded&) {
                    break;
                }
                if (std::abs(delta_exact(chain, n) - oracle) / oracle > 1e-10) return false;
            }
        }
        return true;
    });

    // 4. Delta exponent regression over n in [8, 40].
    criterion(4, "log delta slope within 1% of -L on every corpus chain", [] {
        for (const auto& [name, chain] : corpus()) {
            if (chain.size() == 1) continue;
            double L = coalescence_exponent(chain).L;
            std::vector<std::pair<double, double>> pts;
            for (std::size_t n = 8; n <= 40; ++n)
                pts.emplace_back(double(n), log_delta_exact(chain, n));
            if (std::abs(ols_slope(pts) + L) / L > 0.01) return false;
        }
        return true;
    });

    // 5. Meeting-time sandwich with exact tables, 2-state chains, n in [4, 8].
    criterion(5, "1/(3 delta) <= m_bar <= m_star with bounded K_n, n in [4,8]", [] {
        for (const MarkovChain& chain : {uniform2(), biased75()}) {
            auto rows = check_sandwich(chain, {4, 5, 6, 7, 8});
            for (const auto& r : rows)
                if (!r.bar_le_star || !r.lower_le_bar) return false;
            // no growth trend of K_n over the top half of the range
            double first_half_max = std::max(rows[0].k_n, rows[1].k_n);
            for (std::size_t i = 2; i < rows.size(); ++i)
                if (rows[i].k_n > first_half_max) return false;
        }
        return true;
    });

    // 6. Exact meeting-time exponents. The m_star slope is regressed over
    // n in [4, 8]. The m_bar prefactor carries an additive polynomial term
    // (uniform chain: m_bar = 2^{n+1} - n - 1 exactly), so its raw slope over
    // that window sits >5% from L for any solver; its exponent is instead
    // estimated from local slopes accelerated by Aitken extrapolation.
    criterion(6, "log m_star and log m_bar slopes within 5% of L", [] {
        for (const MarkovChain& chain : {uniform2(), biased75()}) {
            double L = coalescence_exponent(chain).L;
            std::vector<std::pair<double, double>> star;
            std::vector<double> log_bar;
            for (std::size_t n = 4; n <= 9; ++n) {
                MeetingTimeTable t = meeting_time_table(NBlockChain(chain, n));
                if (n <= 8) star.emplace_back(double(n), std::log(t.m_star));
                log_bar.push_back(std::log(t.m_bar));
            }
            if (std::abs(ols_slope(star) - L) / L > 0.05) return false;

            std::size_t last = log_bar.size() - 1;
            double s1 = log_bar[last - 2] - log_bar[last - 3];
            double s2 = log_bar[last - 1] - log_bar[last - 2];
            double s3 = log_bar[last] - log_bar[last - 1];
            double bar_slope = s3 - (s3 - s2) * (s3 - s2) / (s3 - 2.0 * s2 + s1);
            if (std::abs(bar_slope - L) / L > 0.05) return false;
        }
        return true;
    });

    // 7. Moment bounds on the uniform chain, 1e4 trials at n in [3, 7].
    criterion(7, "first and second moment bounds for C_n", [] {
        MarkovChain chain = uniform2();
        for (std::size_t n = 3; n <= 7; ++n) {
            NBlockChain nb(chain, n);
            MeetingTimeTable t = meeting_time_table(nb);
            auto runs = run_coalescence_trials(nb, 10000, 0xACC7 + n);
            std::vector<std::uint64_t> times(runs.size());
            for (std::size_t i = 0; i < runs.size(); ++i) times[i] = runs[i].coalescence_time;
            SampleStats s = summarize(times);

            double first_bound = std::exp(1.0) * (std::log(double(nb.size())) + 1.0) * t.m_star;
            if (s.mean > first_bound + 3.0 * s.stderr_mean) return false;

            // second moment: E(C^2) <= e^2 (3 log|V| + 1) n^2 mean^2 (+ 3 SE of C^2)
            double sum4 = 0.0;
            for (auto c : times) {
                double c2 = double(c) * double(c);
                sum4 += c2 * c2;
            }
            double m2 = s.second_moment;
            double se2 = std::sqrt((sum4 / double(times.size()) - m2 * m2) / double(times.size()));
            double second_bound = std::exp(2.0) * (3.0 * std::log(2.0) + 1.0) *
                                  double(n) * double(n) * s.mean * s.mean;
            if (m2 > second_bound + 3.0 * se2) return false;
        }
        return true;
    });

    // 8. Pathwise domination in recorded runs.
    criterion(8, "pairwise co-occupancy <= C_n in 1000 recorded runs (n = 5)", [] {
        NBlockChain nb(uniform2(), 5);
        auto runs = run_coalescence_trials(nb, 1000, 0xACC8, /*record_pairs=*/true);
        const std::size_t m = nb.size();
        for (const auto& run : runs)
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b)
                    if (run.pair_meeting_times[a * m + b] > run.coalescence_time) return false;
        return true;
    });

    // 9. Exponential tail bound on meeting times.
    criterion(9, "empirical survival under exp(-t/(e m*)) + DKW band", [] {
        auto samples = run_meeting_trials(uniform2(), 1, std::nullopt, 100000, 0xACC9);
        return !tail_profile(samples, 3.0).violated;
    });

    // 10. Concentration of (1/n) log C_n and (1/n) log M_n. The grid runs to
    // n = 14: the prefactor of C_n (~ e*(log|V_n|+1)) keeps the violation
    // fraction near 0.29 at n = 10, so the 0.05 ceiling is only reachable
    // once exp(eps*n) clears it.
    criterion(10, "coalescence/meeting concentration at eps = 0.15", [] {
        MarkovChain chain = uniform2();
        const double L = std::log(2.0), eps = 0.15;
        double prev = 1.0;
        double last = 1.0;
        for (std::size_t n : {4, 6, 8, 10, 12, 14}) {
            NBlockChain nb(chain, n);
            auto runs = run_coalescence_trials(nb, 2000, 0xACCA + n);
            std::size_t bad = 0;
            for (const auto& run : runs) {
                double rate = std::log(double(run.coalescence_time)) / double(n);
                if (std::abs(rate - L) > eps) ++bad;
            }
            double frac = double(bad) / 2000.0;
            if (frac > prev) return false;
            prev = frac;
            last = frac;
        }
        if (last > 0.05) return false;

        std::size_t within = 0;
        const std::size_t pairs = 50, n = 16;
        for (std::size_t p = 0; p < pairs; ++p) {
            Rng rng(RngSpec{0xACCB, p});
            double rate = std::log(double(sample_meeting_time(chain, n, std::nullopt, rng))) /
                          double(n);
            if (std::abs(rate - L) <= eps) ++within;
        }
        return within >= 45;
    });

    // 11. Waiting times outrun meeting times off maximal entropy.
    criterion(11, "(1/n)(log mean W_n - log mean M_n) >= 0.05 at n = 12", [] {
        MarkovChain chain = biased75();
        const std::size_t n = 12, trials = 2000;
        auto waits = run_waiting_trials(chain, n, trials, 0xACCC);
        auto meets = run_meeting_trials(chain, n, std::nullopt, trials, 0xACCD);
        // exponents of the mean times, consistent with the sweep regressions
        double gap = (std::log(summarize(waits).mean) - std::log(summarize(meets).mean)) /
                     double(n);
        return gap >= 0.05;
    });

    // 12. Sweep determinism.
    criterion(12, "identical seeds give byte-identical sweep CSV/JSON", [] {
        auto a = run_sweep(uniform2(), 1, 8, 500, 0xACCE);
        auto b = run_sweep(uniform2(), 1, 8, 500, 0xACCE);
        return sweep_to_csv(a) == sweep_to_csv(b) &&
               sweep_to_json(a).dump() == sweep_to_json(b).dump();
    });

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
