#pragma once

#include "steiner/components.hpp"
#include "steiner/lp.hpp"

namespace steiner {

// Edges of T evicted by the MST after contracting the terminals of K.
struct DropResult {
    TerminalMask mask = 0;
    std::vector<int> dropped_positions;  // indices into T.edges, ascending
    Rat drop_cost;
};

DropResult drop(const TerminalTree& tree, TerminalMask k_mask);

// The constructive witness for sum_K x_K drop_T(K) >= c(T): dropped edges
// of each weighted component, rewritten onto the terminals of K, carry
// weight x_K and must land inside the spanning-tree polytope; each must
// also be a maximum-cost edge on the tree cycle it closes. All three
// checks are recorded; a failure means an implementation bug, not a
// property of the input.
struct BridgeCertificate {
    Rat lhs;        // sum_K x_K drop_T(K)
    Rat tree_cost;  // c(T)
    bool inequality_ok = false;
    TerminalMultigraph h;
    std::vector<Rat> z;
    std::vector<int> source_component;  // h edge -> catalog index
    PolytopeVerdict polytope;
    bool max_cycle_ok = false;

    bool ok() const { return inequality_ok && polytope.member() && max_cycle_ok; }
};

BridgeCertificate bridge_certificate(const TerminalTree& tree, const LpSolution& x,
                                     const Catalog& catalog, int threads = 1);

}  // namespace steiner
