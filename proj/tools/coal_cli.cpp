// Command-line harness: chain ingestion, per-chain spectral analysis,
// n-block materialization, delta series, meeting times (exact and Monte
// Carlo), coalescence runs, sweeps over n, and theorem-level reports.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "coal/io.hpp"
#include "coal/meeting.hpp"
#include "coal/montecarlo.hpp"
#include "coal/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCapOrUsage = 2;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"coalescence and meeting times on n-block Markov chains"};
    app.require_subcommand(1);

    std::string chain_path, out_path, config_path, out_dir;
    std::size_t n = 1, n_lo = 1, n_hi = 1, n_max = 1, trials = 1000;
    std::uint64_t seed = 1;
    bool exact_mode = false, mc_mode = false, record_pairs = false;

    auto* analyze = app.add_subcommand("analyze", "spectral summary: lambda, L, entropy, MME verdict");
    analyze->add_option("chain", chain_path)->required();

    auto* nblock = app.add_subcommand("nblock", "materialize the n-block chain");
    nblock->add_option("chain", chain_path)->required();
    nblock->add_option("--n", n)->required();
    nblock->add_option("--export", out_path);

    auto* delta = app.add_subcommand("delta", "delta_n series as CSV");
    delta->add_option("chain", chain_path)->required();
    delta->add_option("--n-max", n_max)->required();

    auto* meet = app.add_subcommand("meet", "pairwise meeting times on the n-block chain");
    meet->add_option("chain", chain_path)->required();
    meet->add_option("--n", n)->required();
    meet->add_flag("--exact", exact_mode);
    meet->add_flag("--mc", mc_mode);
    meet->add_option("--trials", trials);
    meet->add_option("--seed", seed);

    auto* coalesce = app.add_subcommand("coalesce", "Monte Carlo coalescence on the n-block chain");
    coalesce->add_option("chain", chain_path)->required();
    coalesce->add_option("--n", n)->required();
    coalesce->add_option("--trials", trials)->required();
    coalesce->add_option("--seed", seed)->required();
    coalesce->add_flag("--record-pairs", record_pairs);

    auto* sweep = app.add_subcommand("sweep", "sweep over n, emitting CSV and JSON");
    sweep->add_option("chain", chain_path)->required();
    sweep->add_option("--n-lo", n_lo)->required();
    sweep->add_option("--n-hi", n_hi)->required();
    sweep->add_option("--trials", trials)->required();
    sweep->add_option("--seed", seed)->required();
    sweep->add_option("--out", out_dir)->required();

    auto* report = app.add_subcommand("report", "theorem-level pass/fail report");
    report->add_option("chain", chain_path)->required();
    report->add_option("--config", config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitCapOrUsage;
    }

    coal::MarkovChain chain = coal::load_chain(chain_path);

    if (analyze->parsed()) {
        coal::SpectralSummary s = coal::coalescence_exponent(chain);
        std::cout << coal::summary_to_json(s).dump(2) << "\n";
    } else if (nblock->parsed()) {
        coal::NBlockChain nb(chain, n);
        coal::Json j = coal::nblock_to_json(nb);
        if (!out_path.empty())
            write_file(out_path, j.dump(2) + "\n");
        else
            std::cout << j.dump(2) << "\n";
        std::cerr << "|V_" << n << "| = " << nb.size() << "\n";
    } else if (delta->parsed()) {
        std::cout << "n,delta_n,log_delta,exp\n";
        for (std::size_t i = 1; i <= n_max; ++i) {
            double ld = coal::log_delta_exact(chain, i);
            std::cout << i << ',' << coal::format_scalar(std::exp(ld)) << ','
                      << coal::format_scalar(ld) << ','
                      << coal::format_scalar(ld / static_cast<double>(i)) << "\n";
        }
    } else if (meet->parsed()) {
        if (exact_mode == mc_mode)
            throw std::invalid_argument("meet: pass exactly one of --exact / --mc");
        if (exact_mode) {
            coal::NBlockChain nb(chain, n);
            coal::MeetingTimeTable t = coal::meeting_time_table(nb);
            coal::Json j;
            j["n"] = n;
            j["m_star"] = t.m_star;
            j["m_bar"] = t.m_bar;
            j["delta_n"] = coal::delta_exact(chain, n);
            std::cout << j.dump(2) << "\n";
            std::cout << "u,v,expectation\n";
            for (std::size_t u = 0; u < t.num_states; ++u)
                for (std::size_t v = 0; v < t.num_states; ++v)
                    std::cout << nb.label(u) << ',' << nb.label(v) << ','
                              << coal::format_scalar(t.at(u, v)) << "\n";
        } else {
            auto samples = coal::run_meeting_trials(chain, n, std::nullopt, trials, seed);
            coal::SampleStats s = coal::summarize(samples);
            coal::Json j;
            j["n"] = n;
            j["mean"] = s.mean;
            j["variance"] = s.variance;
            j["stderr"] = s.stderr_mean;
            j["trials"] = s.count;
            std::cout << j.dump(2) << "\n";
        }
    } else if (coalesce->parsed()) {
        coal::NBlockChain nb(chain, n);
        auto runs = coal::run_coalescence_trials(nb, trials, seed, record_pairs);
        std::cout << "trial_id,n,statistic,value,seed,stream\n";
        std::vector<std::uint64_t> times(runs.size());
        for (std::size_t i = 0; i < runs.size(); ++i) {
            times[i] = runs[i].coalescence_time;
            std::cout << i << ',' << n << ",coalescence_time," << times[i] << ',' << seed << ','
                      << i << "\n";
        }
        coal::SampleStats s = coal::summarize(times);
        coal::Json j;
        j["n"] = n;
        j["mean"] = s.mean;
        j["variance"] = s.variance;
        j["stderr"] = s.stderr_mean;
        j["trials"] = s.count;
        j["num_walkers"] = nb.size();
        std::cerr << j.dump(2) << "\n";
    } else if (sweep->parsed()) {
        auto records = coal::run_sweep(chain, n_lo, n_hi, trials, seed);
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/sweep.csv", coal::sweep_to_csv(records));
        write_file(out_dir + "/sweep.json", coal::sweep_to_json(records).dump(2) + "\n");
    } else if (report->parsed()) {
        coal::ReportConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open " + config_path);
            cfg = coal::report_config_from_json(coal::Json::parse(in));
        }
        coal::TheoremReport rep = coal::theorem_report(chain, cfg);
        std::cout << rep.to_json().dump(2) << "\n";
        return rep.all_pass() ? kExitOk : kExitValidation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const coal::NotStochastic& e) {
        std::cerr << "validation error (not stochastic): " << e.what() << "\n";
        return kExitValidation;
    } catch (const coal::NotMixing& e) {
        std::cerr << "validation error (not mixing): " << e.what() << "\n";
        return kExitValidation;
    } catch (const coal::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCapOrUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitCapOrUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
