#include "steiner/steiner_dp.hpp"

#include <algorithm>
#include <set>

namespace steiner {

namespace {

struct Tables {
    // dp[S][v]: optimal tree containing terminal set S and vertex v.
    // via[S][v]: merge vertex u with dp[S][v] = merged[S][u] + d(u, v).
    // split[S][u]: canonical submask realizing merged[S][u].
    std::vector<std::vector<Rat>> dp;
    std::vector<std::vector<int>> split;
    std::vector<std::vector<int>> via;
};

void traceback(const Tables& t, const std::vector<int>& terminals, std::uint32_t S, int v,
               std::set<std::pair<int, int>>& out) {
    if ((S & (S - 1)) == 0) {
        const int ti = terminals[__builtin_ctz(S)];
        if (ti != v) out.insert(std::minmax(ti, v));
        return;
    }
    const int u = t.via[S][v];
    if (u != v) out.insert(std::minmax(u, v));
    const std::uint32_t half = static_cast<std::uint32_t>(t.split[S][u]);
    traceback(t, terminals, half, u, out);
    traceback(t, terminals, S & ~half, u, out);
}

}  // namespace

SteinerDpResult steiner_tree_dp(const std::vector<std::vector<Rat>>& dist,
                                const std::vector<int>& terminals) {
    const int m = static_cast<int>(dist.size());
    const int k = static_cast<int>(terminals.size());
    SteinerDpResult result;
    result.cost = 0;
    if (k <= 1) return result;
    if (k > 20) throw Error("steiner_tree_dp: too many terminals (" + std::to_string(k) + ")");

    const std::uint32_t full = (1u << k) - 1;
    Tables t;
    t.dp.assign(full + 1, {});
    t.split.assign(full + 1, {});
    t.via.assign(full + 1, {});

    for (int i = 0; i < k; ++i) {
        const std::uint32_t S = 1u << i;
        t.dp[S].resize(m);
        for (int v = 0; v < m; ++v) {
            t.dp[S][v] = dist[terminals[i]][v];
            ++result.updates;
        }
    }

    std::vector<Rat> merged(m);
    std::vector<int> merged_split(m);
    for (std::uint32_t S = 1; S <= full; ++S) {
        if ((S & (S - 1)) == 0) continue;
        const std::uint32_t low = S & ~(S - 1);
        bool first = true;
        for (std::uint32_t sub = (S - 1) & S; sub; sub = (sub - 1) & S) {
            if (!(sub & low)) continue;  // canonical side holds the lowest terminal
            const std::uint32_t rest = S & ~sub;
            for (int v = 0; v < m; ++v) {
                Rat cand = t.dp[sub][v] + t.dp[rest][v];
                if (first || cmp(cand, merged[v]) < 0) {
                    merged[v] = std::move(cand);
                    merged_split[v] = static_cast<int>(sub);
                    ++result.updates;
                }
            }
            first = false;
        }
        t.split[S] = merged_split;
        t.dp[S].resize(m);
        t.via[S].assign(m, -1);
        for (int v = 0; v < m; ++v) {
            Rat best = merged[v];
            int best_u = v;
            for (int u = 0; u < m; ++u) {
                if (u == v) continue;
                Rat cand = merged[u] + dist[u][v];
                if (cmp(cand, best) < 0) {
                    best = std::move(cand);
                    best_u = u;
                    ++result.updates;
                }
            }
            t.dp[S][v] = std::move(best);
            t.via[S][v] = best_u;
        }
    }

    const int root = terminals[0];
    result.cost = t.dp[full][root];
    std::set<std::pair<int, int>> edges;
    traceback(t, terminals, full, root, edges);
    result.edges.assign(edges.begin(), edges.end());
    return result;
}

}  // namespace steiner
