#pragma once

#include <vector>

#include "steiner/components.hpp"
#include "steiner/simplex.hpp"

namespace steiner {

// One subset row: sum_K max(|K cap S| - 1, 0) * x_K <= |S| - 1.
struct LpRow {
    TerminalMask subset = 0;
    int rhs = 0;
};

// The full relaxation over a component catalog: every nonempty subset row
// (ascending mask order) plus the single tying equality
// sum_K (|K| - 1) x_K = |R| - 1. Coefficients are implied by the masks.
struct HypergraphicLp {
    int terminal_count = 0;
    std::vector<TerminalMask> component_masks;  // catalog order
    std::vector<Rat> component_costs;
    std::vector<LpRow> rows;  // 2^|R| - 1 of them

    int equality_rhs() const { return terminal_count - 1; }
};

inline int row_coefficient(TerminalMask component, TerminalMask subset) {
    const int inter = __builtin_popcount(component & subset);
    return inter >= 2 ? inter - 1 : 0;
}

// Materializes every subset row. Refuses more than `terminal_cap`
// terminals; enumeration is meant for desk-scale instances only.
HypergraphicLp build_lp(const Catalog& catalog, int terminal_cap = 16);

struct LpSolution {
    std::vector<Rat> x;  // catalog order
    Rat lp_star;
    Rat loss_star;
    Rat mass;
};

// Exact optimum of the full LP. Rows are activated in rounds: solve over
// the active set, rescan every materialized row for violations, repeat.
// The returned vertex is optimal for all 2^|R| - 1 rows (it is feasible
// for them and optimal for a subset). Deterministic via Bland's rule and
// the fixed activation order.
LpSolution solve_lp(const HypergraphicLp& lp, const Catalog& catalog, int threads = 1);

// Violated rows for a candidate point, sorted by (violation desc, mask
// asc). The scan over all rows is the parallel kernel; results do not
// depend on `threads`.
std::vector<std::pair<int, Rat>> scan_violated_rows(const HypergraphicLp& lp,
                                                    const std::vector<Rat>& x, int threads);
std::vector<std::pair<int, Rat>> scan_violated_rows_serial(const HypergraphicLp& lp,
                                                           const std::vector<Rat>& x);

// Multigraph on terminals with a candidate point of the spanning-tree
// polytope: z >= 0, sum z = n - 1, and every proper subset S spans at
// most |S| - 1 units of z.
struct TerminalMultigraph {
    int n = 0;
    std::vector<Edge> edges;
};

struct SpanningTreePolytopePoint {
    TerminalMultigraph h;
    std::vector<Rat> z;
};

struct SubsetViolation {
    TerminalMask subset = 0;
    Rat lhs;
    Rat rhs;
};

struct PolytopeVerdict {
    bool nonnegative = true;
    bool total_ok = true;
    Rat total;
    std::vector<SubsetViolation> violations;  // ascending by mask
    bool member() const { return nonnegative && total_ok && violations.empty(); }
};

PolytopeVerdict check_spanning_tree_polytope(const SpanningTreePolytopePoint& point, int threads);
PolytopeVerdict check_spanning_tree_polytope_serial(const SpanningTreePolytopePoint& point);

// True iff the selected terminal sets (nonnegative integer multiplicity)
// form a connected, cycle-free hypergraph spanning all terminals. Throws
// on fractional entries.
bool is_integral_hyper_spanning_tree(const std::vector<Rat>& x,
                                     const std::vector<TerminalMask>& component_masks,
                                     int terminal_count);

}  // namespace steiner
