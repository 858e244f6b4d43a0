#include "coal/meeting.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <string>

namespace coal {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr std::size_t kDirectSolveMax = 100'000;

// Unordered pairs u < v indexed consecutively.
inline std::size_t pair_index(std::size_t u, std::size_t v, std::size_t m) {
    // u < v; index within the strictly-upper-triangular enumeration by rows
    return u * m - u * (u + 1) / 2 + (v - u - 1);
}

}  // namespace

MeetingTimeTable meeting_time_table(const NBlockChain& nb, std::size_t cap) {
    const std::size_t m = nb.size();
    if (m * m > cap)
        throw CapExceeded("product chain has " + std::to_string(m * m) +
                              " states, cap is " + std::to_string(cap),
                          m * m);

    const std::size_t num_pairs = m * (m - 1) / 2;

    // Sparse rows of P_n, reused heavily below.
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(m);
    for (std::size_t u = 0; u < m; ++u) rows[u] = nb.row(u);

    // System over unordered off-diagonal pairs s = (u,v), u < v:
    //   x(s) = b(s) + sum_{s'} R(s,s') x(s'),
    // where b(s) = 1 + P(both walkers land on the same word) and R collects
    // moves to off-diagonal pairs. R is substochastic, so x is unique.
    std::vector<double> b(num_pairs, 0.0);
    std::vector<std::vector<std::pair<std::size_t, double>>> r(num_pairs);
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = u + 1; v < m; ++v) {
            const std::size_t s = pair_index(u, v, m);
            double hit = 0.0;
            auto& row = r[s];
            for (auto [c, pc] : rows[u]) {
                for (auto [d, pd] : rows[v]) {
                    const double p = pc * pd;
                    if (c == d) {
                        hit += p;
                    } else {
                        row.emplace_back(pair_index(std::min(c, d), std::max(c, d), m), p);
                    }
                }
            }
            // Merge duplicate targets ((c,d) and (d,c) map to the same pair).
            std::sort(row.begin(), row.end());
            std::size_t w = 0;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (w > 0 && row[w - 1].first == row[i].first)
                    row[w - 1].second += row[i].second;
                else
                    row[w++] = row[i];
            }
            row.resize(w);
            b[s] = 1.0 + hit;
        }
    }

    std::vector<double> x(num_pairs, 1.0);
    if (num_pairs > 0 && num_pairs <= kDirectSolveMax) {
        Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(num_pairs),
                                      static_cast<Eigen::Index>(num_pairs));
        std::vector<Eigen::Triplet<double>> trips;
        for (std::size_t s = 0; s < num_pairs; ++s) {
            trips.emplace_back(static_cast<int>(s), static_cast<int>(s), 1.0);
            for (auto [t, p] : r[s])
                trips.emplace_back(static_cast<int>(s), static_cast<int>(t), -p);
        }
        a.setFromTriplets(trips.begin(), trips.end());
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(num_pairs));
        for (std::size_t s = 0; s < num_pairs; ++s) rhs(static_cast<Eigen::Index>(s)) = b[s];
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(a);
        if (lu.info() != Eigen::Success)
            throw SolverFailure("sparse factorization of the meeting-time system failed");
        Eigen::VectorXd sol = lu.solve(rhs);
        for (std::size_t s = 0; s < num_pairs; ++s) x[s] = sol(static_cast<Eigen::Index>(s));
    } else if (num_pairs > 0) {
        // Fixed-point iteration x <- b + R x; monotone convergence from below.
        std::vector<double> y(num_pairs);
        const std::size_t max_iter = 100'000'000;
        std::size_t it = 0;
        for (; it < max_iter; ++it) {
            double residual = 0.0;
#pragma omp parallel for reduction(max : residual) schedule(static)
            for (long long si = 0; si < static_cast<long long>(num_pairs); ++si) {
                const auto s = static_cast<std::size_t>(si);
                double acc = b[s];
                for (auto [t, p] : r[s]) acc += p * x[t];
                y[s] = acc;
                residual = std::max(residual, std::abs(acc - x[s]));
            }
            x.swap(y);
            if (residual <= kResidualTol) break;
        }
        if (it == max_iter)
            throw SolverFailure("meeting-time fixed point did not reach residual tolerance");
    }

    // Residual verification of the solved system.
    double residual = 0.0;
    for (std::size_t s = 0; s < num_pairs; ++s) {
        double acc = b[s];
        for (auto [t, p] : r[s]) acc += p * x[t];
        residual = std::max(residual, std::abs(acc - x[s]));
    }
    if (residual > 1e-8)
        throw SolverFailure("meeting-time system residual " + std::to_string(residual));

    MeetingTimeTable table;
    table.n = nb.n();
    table.num_states = m;
    table.expectations.assign(m * m, 1.0);
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) {
            double e = x[pair_index(u, v, m)];
            table.expectations[u * m + v] = e;
            table.expectations[v * m + u] = e;
        }
    table.m_star = *std::max_element(table.expectations.begin(), table.expectations.end());

    const auto& pi = nb.pi();
    double bar = 0.0;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v)
            bar += pi[u] * pi[v] * table.expectations[u * m + v];
    table.m_bar = bar;
    return table;
}

std::vector<SandwichRow> check_sandwich(const MarkovChain& chain,
                                        const std::vector<std::size_t>& n_range,
                                        std::size_t cap) {
    std::vector<SandwichRow> out;
    out.reserve(n_range.size());
    for (std::size_t n : n_range) {
        NBlockChain nb(chain, n);
        MeetingTimeTable t = meeting_time_table(nb, cap);
        SandwichRow row;
        row.n = n;
        row.delta_n = delta_exact(chain, n);
        row.lower = 1.0 / (3.0 * row.delta_n);
        row.m_bar = t.m_bar;
        row.m_star = t.m_star;
        row.upper_ref = static_cast<double>(n) / row.delta_n;
        row.k_n = t.m_star * row.delta_n / static_cast<double>(n);
        row.bar_le_star = t.m_bar <= t.m_star * (1.0 + 1e-12);
        row.lower_le_bar = row.lower <= t.m_bar * (1.0 + 1e-12);
        out.push_back(row);
    }
    return out;
}

}  // namespace coal
