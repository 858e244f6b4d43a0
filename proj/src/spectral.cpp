#include "coal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coal {

PerronPair perron(const std::vector<std::vector<double>>& matrix, const PerronOptions& opts) {
    const std::size_t k = matrix.size();
    double max_row_sum = 0.0;
    for (const auto& row : matrix) {
        double s = 0.0;
        for (double x : row) s += x;
        max_row_sum = std::max(max_row_sum, s);
    }

    std::vector<double> x(k, 1.0 / static_cast<double>(k));
    std::vector<double> y(k);
    double rq_prev = -1.0;
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < k; ++j) s += matrix[i][j] * x[j];
            y[i] = s;
        }
        // Rayleigh quotient in the 1-norm sense: ||Mx||_1 / ||x||_1 with x >= 0.
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < k; ++i) { num += y[i]; den += x[i]; }
        double rq = num / den;
        double scale = num;
        for (std::size_t i = 0; i < k; ++i) x[i] = y[i] / scale;

        if (std::abs(rq - rq_prev) < opts.rayleigh_tol) {
            // Residual check against the unnormalized iterate.
            double residual = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < k; ++j) s += matrix[i][j] * x[j];
                residual = std::max(residual, std::abs(s - rq * x[i]));
            }
            if (residual <= opts.residual_tol * std::max(max_row_sum, 1.0))
                return {rq, x};
        }
        rq_prev = rq;
    }
    throw NoConvergence("power iteration did not converge in " +
                        std::to_string(opts.max_iterations) +
                        " iterations (periodic support?)");
}

std::vector<std::vector<double>> parry_matrix(const MarkovChain& chain) {
    const std::size_t k = chain.size();
    std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            a[u][v] = chain.support(u, v) ? 1.0 : 0.0;
    PerronPair pf = perron(a);
    std::vector<std::vector<double>> star(k, std::vector<double>(k, 0.0));
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            if (a[u][v] > 0.0)
                star[u][v] = pf.eigenvector[v] / (pf.eigenvalue * pf.eigenvector[u]);
    return star;
}

std::pair<bool, double> is_measure_of_maximal_entropy(const MarkovChain& chain, double tol) {
    auto star = parry_matrix(chain);
    double dist = 0.0;
    for (std::size_t u = 0; u < chain.size(); ++u)
        for (std::size_t v = 0; v < chain.size(); ++v)
            dist = std::max(dist, std::abs(chain.p(u, v) - star[u][v]));
    return {dist <= tol, dist};
}

SpectralSummary coalescence_exponent(const MarkovChain& chain, double mme_tol) {
    const std::size_t k = chain.size();
    std::vector<std::vector<double>> q(k, std::vector<double>(k, 0.0));
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = 0; v < k; ++v)
            q[u][v] = chain.p(u, v) * chain.p(u, v);
    SpectralSummary s;
    s.lambda = perron(q).eigenvalue;
    s.L = -std::log(s.lambda);
    if (k == 1) s.L = 0.0;  // exact, not -log(1+eps)
    s.entropy = entropy(chain);
    auto [mme, dist] = is_measure_of_maximal_entropy(chain, mme_tol);
    s.is_mme = mme;
    s.mme_distance = dist;
    return s;
}

}  // namespace coal
