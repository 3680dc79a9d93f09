#pragma once

#include <utility>
#include <vector>

#include "steiner/rational.hpp"

namespace steiner {

// min c^T x subject to rows, x >= 0. Senses: 'L' (<=) or 'E' (=).
struct LpConstraint {
    std::vector<std::pair<int, Rat>> coeffs;
    char sense = 'L';
    Rat rhs;
};

struct LpProblem {
    int num_vars = 0;
    std::vector<Rat> objective;
    std::vector<LpConstraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> x;
    Rat objective;
    long pivots = 0;
};

// Two-phase primal simplex on a dense rational tableau with Bland's
// anti-cycling rule: deterministic, exact, terminating.
LpResult solve_exact_lp(const LpProblem& problem);

}  // namespace steiner
