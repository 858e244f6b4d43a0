#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coal/io.hpp"
#include "coal/meeting.hpp"
#include "coal/montecarlo.hpp"

namespace coal {

struct Caps {
    std::size_t nblock = kNBlockCapDefault;
    std::size_t product = kProductCapDefault;
    std::size_t walkers = kWalkerCapDefault;
};

/// One row of a sweep over n: exact quantities always, Monte Carlo and
/// exact tables while the caps allow.
struct SweepRecord {
    std::size_t n = 0;
    double log_delta = 0.0;
    double delta_n = 0.0;
    double L = 0.0;
    double h = 0.0;
    std::optional<double> m_star;
    std::optional<double> m_bar;
    std::optional<double> ec_mean;
    std::optional<double> ec_se;
    std::size_t trials = 0;
    // name -> (1/n) log(value), for every populated quantity
    std::map<std::string, double> exps;
};

std::vector<SweepRecord> run_sweep(const MarkovChain& chain, std::size_t n_lo, std::size_t n_hi,
                                   std::size_t trials, std::uint64_t seed, const Caps& caps = {},
                                   Exec exec = Exec::Parallel);

struct ExponentEstimate {
    std::string quantity;
    double slope = 0.0;
    double stderr_slope = 0.0;
    std::size_t n_lo = 0, n_hi = 0;
};

/// OLS slope of log(value) against n over the window; needs >= 4 points.
/// Quantities: "delta", "m_star", "m_bar", "ec_mean".
ExponentEstimate estimate_exponent(const std::vector<SweepRecord>& records,
                                   const std::string& quantity, std::size_t n_lo,
                                   std::size_t n_hi);

std::string sweep_to_csv(const std::vector<SweepRecord>& records);
Json sweep_to_json(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> sweep_from_json(const Json& j);

// ---------------------------------------------------------------------------

struct ReportConfig {
    double epsilon = 0.15;  // nats
    // The grid must reach n where exp(eps*n) clears the prefactor of C_n
    // (~ e*(log|V_n|+1)); below n = 14 the violation fraction plateaus
    // well above 0.05 for 2-state chains.
    std::vector<std::size_t> coalescence_grid = {4, 6, 8, 10, 12, 14};
    std::size_t coalescence_trials = 2000;
    double violation_ceiling = 0.05;     // at the largest grid n
    double one_sided_ceiling = 0.05;     // too-early / too-late, each
    std::size_t trajectory_pairs = 50;
    std::vector<std::size_t> pair_ns = {8, 12, 16};
    double pair_pass_fraction = 0.9;     // checked at the largest pair n
    std::size_t regression_n_lo = 4, regression_n_hi = 8;
    double regression_rel_tol = 0.05;
    std::uint64_t seed = 1;
    Caps caps;
};

ReportConfig report_config_from_json(const Json& j);

struct CheckResult {
    std::string name;
    bool pass = false;
    Json details;
};

struct TheoremReport {
    SpectralSummary summary;
    std::vector<CheckResult> checks;
    bool all_pass() const;
    Json to_json() const;
};

/// Finite-n checks of the limit statements: coalescence concentration,
/// the L/h trichotomy, exponent regressions, and per-pair meeting-time
/// concentration with one-sided too-early / too-late frequencies.
TheoremReport theorem_report(const MarkovChain& chain, const ReportConfig& config,
                             Exec exec = Exec::Parallel);

}  // namespace coal
