#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steiner/graph.hpp"

namespace steiner {

// Bit i = i-th terminal in ascending host-vertex order.
using TerminalMask = std::uint32_t;

// A loss-contracted edge: a terminal-terminal copy of one surviving
// component edge. Distinct parallel copies are kept apart on purpose.
struct LcEdge {
    int a = -1, b = -1;  // terminal indices
    Rat cost;
    int backing_edge = -1;  // metric-graph edge id it came from
};

struct FullComponent {
    TerminalMask mask = 0;
    std::vector<int> terminal_indices;  // ascending
    std::vector<int> terminal_vertices;  // ascending host ids
    std::vector<int> tree_edges;         // metric-graph edge ids, ascending
    Rat cost;
    std::vector<int> loss_edges;  // subset of tree_edges, ascending
    Rat loss_cost;
    std::vector<LcEdge> lc_edges;
    // Steiner vertex -> terminal vertex it collapses onto under loss
    // contraction, ascending by Steiner vertex.
    std::vector<std::pair<int, int>> steiner_representatives;

    Rat lc_cost() const { return cost - loss_cost; }
};

struct ComponentBuild {
    std::optional<FullComponent> component;
    std::string discard_reason;  // set when component is absent
    bool connected = false;
    Rat tree_cost;  // Steiner-tree optimum for K, valid when connected
};

struct DiscardedSet {
    TerminalMask mask = 0;
    std::string reason;
    bool has_cost = false;
    Rat tree_cost;
};

struct Catalog {
    int r = 0;
    int terminal_count = 0;
    std::vector<int> terminal_vertices;     // ascending host ids
    std::vector<FullComponent> components;  // ascending by mask
    std::vector<DiscardedSet> discarded;    // ascending by mask

    const FullComponent* find(TerminalMask mask) const;
};

// Minimum-cost full component for terminal set K: the Steiner-tree
// optimum for K once every other terminal is removed, canonicalized so
// internal Steiner vertices have degree >= 3. Terminal sets whose optimum
// keeps a terminal internal are discarded (their subsets cover them).
// `metric` must be the metric closure over all vertices.
ComponentBuild optimal_full_component(const Graph& metric, const std::vector<int>& k_vertices);

// Cheapest subset of the component's edges connecting every Steiner
// vertex to some terminal: contract the terminals together and take the
// MST of what remains, ties by edge id.
EdgeSet compute_loss(const Graph& metric, const std::vector<int>& tree_edges);

struct LossContraction {
    std::vector<LcEdge> lc_edges;
    std::vector<std::pair<int, int>> steiner_representatives;
};

// Re-expresses the non-loss edges through each loss-forest component's
// unique terminal. Throws if some loss-forest component does not contain
// exactly one terminal.
LossContraction loss_contract(const Graph& metric, const std::vector<int>& tree_edges,
                              const std::vector<int>& loss_edges,
                              const std::vector<int>& terminal_index_of_vertex);

// Every terminal subset of size 2..r, built independently and merged in
// ascending mask order. `threads` only changes wall time, never results.
Catalog enumerate_catalog(const Graph& metric, int r, int threads);
Catalog enumerate_catalog_serial(const Graph& metric, int r);

// Cheapest direct edge per vertex pair (-1 where absent).
std::vector<std::vector<int>> pair_edge_index(const Graph& g);

// Canonical cleanup of a tree-ish edge multiset on a complete metric
// graph: dedupe, break zero-cost cycles with an MST, prune unprotected
// leaves, shortcut unprotected degree-2 vertices through the direct
// metric edge. Cost-neutral on an optimal tree; throws otherwise.
std::vector<int> canonicalize_metric_tree(const Graph& metric,
                                          const std::vector<std::vector<int>>& pairs,
                                          std::vector<int> edge_ids,
                                          const std::vector<char>& protected_vertex);

}  // namespace steiner
