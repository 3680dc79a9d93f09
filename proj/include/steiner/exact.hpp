#pragma once

#include <cstdint>

#include "steiner/graph.hpp"
#include "steiner/lp.hpp"

namespace steiner {

struct ExactResult {
    Rat cost;                    // optimum Steiner tree cost
    std::vector<int> tree_edges;  // host-graph edge ids, ascending
    std::uint64_t dp_updates = 0;
};

// Optimum Steiner tree by subset dynamic programming over the metric
// closure. Capped at `terminal_cap` terminals (3^|R| states).
ExactResult exact_steiner(const Graph& g, int terminal_cap = 14);
ExactResult exact_steiner(const Graph& g, const MetricClosure& full_closure, int terminal_cap = 14);

// opt / lp*; demands lp* > 0 whenever opt > 0.
Rat gap(const ExactResult& exact, const LpSolution& lp);

}  // namespace steiner
