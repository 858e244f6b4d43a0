#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "coal/meeting.hpp"
#include "coal/montecarlo.hpp"
#include "corpus.hpp"

using namespace coal;
using namespace coal::testing;

TEST_CASE("single-state chain: everything is 1") {
    NBlockChain nb(trivial_chain(), 3);
    MeetingTimeTable t = meeting_time_table(nb);
    CHECK(t.m_star == 1.0);
    CHECK(t.m_bar == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.at(0, 0) == 1.0);
}

TEST_CASE("uniform 2-state at n = 1: off-diagonal expectation 3") {
    NBlockChain nb(uniform2(), 1);
    MeetingTimeTable t = meeting_time_table(nb);
    CHECK(t.at(0, 0) == 1.0);
    CHECK(t.at(0, 1) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(t.at(1, 0) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(t.m_star == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(t.m_bar == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("product cap is enforced") {
    CHECK_THROWS_AS(meeting_time_table(NBlockChain(uniform2(), 4), 100), CapExceeded);
}

// Dense brute-force oracle: solve the full |V|^2-state system including
// both (u,v) and (v,u) as separate states, diagonal absorbed at value 1.
namespace {

MeetingTimeTable dense_oracle(const MarkovChain& chain) {
    const std::size_t k = chain.size();
    const std::size_t m = k * k;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(Eigen::Index(m), Eigen::Index(m));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(Eigen::Index(m));
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v) {
            const std::size_t s = u * k + v;
            if (u == v) {
                a(Eigen::Index(s), Eigen::Index(s)) = 1.0;
                b(Eigen::Index(s)) = 1.0;
                continue;
            }
            a(Eigen::Index(s), Eigen::Index(s)) = 1.0;
            b(Eigen::Index(s)) = 1.0;
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t d = 0; d < k; ++d) {
                    const double p = chain.p(u, c) * chain.p(v, d);
                    if (c == d)
                        b(Eigen::Index(s)) += p;  // absorbed next step at value 1
                    else
                        a(Eigen::Index(s), Eigen::Index(c * k + d)) -= p;
                }
        }
    Eigen::VectorXd x = a.partialPivLu().solve(b);
    MeetingTimeTable t;
    t.n = 1;
    t.num_states = k;
    t.expectations.resize(m);
    for (std::size_t s = 0; s < m; ++s) t.expectations[s] = x(Eigen::Index(s));
    return t;
}

}  // namespace

TEST_CASE("pair-reduced solver matches the dense full-product oracle") {
    for (std::uint64_t seed : {11, 12, 13}) {
        MarkovChain chain = random_chain(3, seed);
        NBlockChain nb(chain, 1);
        MeetingTimeTable fast = meeting_time_table(nb);
        MeetingTimeTable slow = dense_oracle(chain);
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t v = 0; v < 3; ++v) {
                CAPTURE(u);
                CAPTURE(v);
                CHECK(std::abs(fast.at(u, v) - slow.expectations[u * 3 + v]) <= 1e-8);
            }
    }
}

TEST_CASE("exact table agrees with Monte Carlo sampling at n = 2") {
    MarkovChain chain = uniform2();
    NBlockChain nb(chain, 2);
    MeetingTimeTable t = meeting_time_table(nb);
    const std::size_t trials = 10000;
    for (std::size_t u : {0, 3}) {
        for (std::size_t v : {1, 2}) {
            auto samples = run_meeting_trials(
                chain, 2, PairInit{nb.words()[u], nb.words()[v]}, trials, 777);
            SampleStats s = summarize(samples);
            CAPTURE(u);
            CAPTURE(v);
            CHECK(std::abs(s.mean - t.at(u, v)) <= 4.0 * s.stderr_mean);
        }
    }
}

TEST_CASE("sandwich report on the uniform chain") {
    auto rows = check_sandwich(uniform2(), {1});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].lower == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rows[0].m_bar == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rows[0].m_star == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(rows[0].bar_le_star);
    CHECK(rows[0].lower_le_bar);
}

TEST_CASE("sandwich and bounded K_n on the biased chain over n in [2,8]") {
    auto rows = check_sandwich(biased75(), {2, 3, 4, 5, 6, 7, 8});
    double k_max = 0.0;
    for (const auto& r : rows) {
        CAPTURE(r.n);
        CHECK(r.bar_le_star);
        if (r.n >= kSandwichNMin) CHECK(r.lower_le_bar);
        CHECK(r.m_bar * r.delta_n >= 1.0 / 3.0 - (r.n < kSandwichNMin ? 1.0 : 0.0));
        k_max = std::max(k_max, r.k_n);
    }
    // no growth trend over the top half of the range
    CHECK(rows.back().k_n <= k_max + 1e-12);
    CHECK(rows[6].k_n <= rows[4].k_n * 1.05);
}
