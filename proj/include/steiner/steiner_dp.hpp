#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "steiner/rational.hpp"

namespace steiner {

// Minimum Steiner tree on a complete metric graph, by dynamic programming
// over terminal subsets. `dist` is a full symmetric matrix; `terminals`
// are local vertex indices. Returns the optimum cost, one optimal tree as
// vertex pairs (deterministic: splits and via-vertices scanned in
// ascending order, strict improvements only), and the number of table
// updates performed.
struct SteinerDpResult {
    Rat cost;
    std::vector<std::pair<int, int>> edges;
    std::uint64_t updates = 0;
};

SteinerDpResult steiner_tree_dp(const std::vector<std::vector<Rat>>& dist,
                                const std::vector<int>& terminals);

}  // namespace steiner
