#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "steiner/exact.hpp"
#include "steiner/instance.hpp"
#include "steiner/rlc.hpp"

namespace steiner {

struct Verdict {
    std::string name;
    bool applicable = true;
    bool pass = true;
    std::string detail;

    bool failed() const { return applicable && !pass; }
};

struct ExperimentConfig {
    int r = 0;  // 0 = min(|R|, 5)
    long trials = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::General;
    bool compute_opt = true;  // honored while |R| <= opt_cap
    int opt_cap = 14;
    int lp_cap = 16;
    int threads = 1;
    bool certify = true;
};

struct TrialRun {
    std::uint64_t seed = 0;
    RlcTrace trace;
};

// Everything one experiment produced, reproducible from (instance,
// config) alone; serialization is byte-stable.
struct RunReport {
    InstanceFile instance;
    ExperimentConfig config;
    int effective_r = 0;
    bool quasi_bipartite = false;
    Catalog catalog;
    LpSolution lp;
    Rat terminal_mst_cost;
    std::optional<ExactResult> exact;
    std::optional<Rat> gap_value;
    RlcConfig rlc_config;
    std::vector<TrialRun> trials;
    std::optional<Rat> mean_alg;
    Rat bound_factor;  // certified lower bound of the mode's ratio
    std::vector<Verdict> verdicts;

    bool all_pass() const;
};

RunReport run_experiment(const InstanceFile& instance, const ExperimentConfig& config);

std::string report_to_json(const RunReport& report);
std::string csv_header();
std::string report_csv_row(const RunReport& report);

// Serialized forms of the LP pieces (exact rationals as "p/q" strings).
std::string catalog_to_json(const Catalog& catalog);
std::string lp_to_json(const HypergraphicLp& lp);
std::string lp_solution_to_json(const LpSolution& solution, const Catalog& catalog);

struct BatchResult {
    std::vector<std::filesystem::path> report_files;
    std::filesystem::path summary_csv;
    bool all_pass = true;
};

// Runs every .stp/.json instance in `input_dir` (sorted by filename),
// writes one report per instance plus summary.csv into `out_dir`.
BatchResult run_batch(const std::filesystem::path& input_dir,
                      const std::filesystem::path& out_dir, const ExperimentConfig& config);

}  // namespace steiner
