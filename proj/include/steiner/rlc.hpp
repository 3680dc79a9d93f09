#pragma once

#include <cstdint>
#include <optional>

#include "steiner/bridge.hpp"
#include "steiner/rng.hpp"

namespace steiner {

enum class Mode { General, QuasiBipartite };

// Sampling setup for one rounding run. The ideal normalizer is
// iterations / rate with an irrational rate (ln 3 or the root of
// a = 1 + exp(-a)); `normalizer` is the exact rational stand-in
// iterations / rate_lower, within 1e-50 of the ideal and never below the
// LP mass, so all probability arithmetic stays rational.
struct RlcConfig {
    Mode mode = Mode::General;
    long iterations = 0;  // t
    Rat normalizer;       // M
    Rat inv_normalizer;   // 1/M (0 when iterations == 0)
    Rat rate_lower;       // certified lower bound of ln 3 resp. alpha
    Rat mass;
    std::uint64_t seed = 0;
    bool certify = true;
};

// Smallest iteration count t with t >= mass * rate, then M = t / rate.
RlcConfig choose_m_and_t(const LpSolution& x, Mode mode, std::uint64_t seed);

// One inverse-CDF lookup with a single high-resolution uniform draw;
// components are scanned in catalog order. Returns the catalog index or
// -1 for the empty component.
int sample_component(const std::vector<Rat>& x, const Rat& inv_normalizer, SplitMix64& rng);

struct IterationRecord {
    int sampled_component = -1;  // catalog index or -1
    Rat tree_cost_before;
    Rat tree_cost_after;
    Rat drop_cost;
    Rat lc_cost;
    bool exchange_ok = false;  // after <= before - drop + lc
    bool monotone_ok = false;  // after <= before
    std::optional<BridgeCertificate> certificate;  // for the tree at iteration start
};

struct RlcTrace {
    RlcConfig config;
    TerminalTree initial_tree;
    TerminalTree final_tree;
    std::vector<IterationRecord> iterations;
    std::optional<BridgeCertificate> final_certificate;
    std::vector<int> alg_edges;  // host-graph edge ids, ascending
    Rat alg_cost;
    Rat loss_total;  // sum of loss(K_i) over sampled iterations
    bool alg_connected = false;
    bool alg_decomposition_ok = false;  // alg_cost <= c(T_{t+1}) + loss_total

    bool all_ok() const;
};

// Everything a rounding run reads; all referents outlive the run.
struct RlcContext {
    const Graph* host = nullptr;
    const MetricClosure* full_closure = nullptr;      // over all vertices
    const MetricClosure* terminal_closure = nullptr;  // over the terminals
    const Catalog* catalog = nullptr;
};

// The full randomized loss-contracting run: start from the terminal MST,
// iterate sample / splice-in / re-MST, then expand the final tree plus
// all sampled losses back into host edges and prune to a Steiner tree.
RlcTrace rlc_round(const RlcContext& ctx, const LpSolution& x, const RlcConfig& config,
                   int threads = 1);

// No edge joins two Steiner vertices.
bool check_quasi_bipartite(const Graph& g);

}  // namespace steiner
