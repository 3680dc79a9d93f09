#include "steiner/exact.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "steiner/components.hpp"
#include "steiner/steiner_dp.hpp"

namespace steiner {

ExactResult exact_steiner(const Graph& g, int terminal_cap) {
    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    return exact_steiner(g, metric_closure(g, all), terminal_cap);
}

ExactResult exact_steiner(const Graph& g, const MetricClosure& full_closure, int terminal_cap) {
    const std::vector<int> terminals = g.terminals();
    if (terminals.empty()) throw Error("exact_steiner: no terminals");
    if (static_cast<int>(terminals.size()) > terminal_cap)
        throw Error("exact_steiner: " + std::to_string(terminals.size()) +
                    " terminals exceed the cap of " + std::to_string(terminal_cap));

    ExactResult out;
    out.cost = 0;
    if (terminals.size() == 1) return out;

    const Graph& metric = full_closure.graph;
    std::vector<std::vector<Rat>> dist(metric.n, std::vector<Rat>(metric.n, Rat(0)));
    const std::vector<std::vector<int>> pairs = pair_edge_index(metric);
    for (int i = 0; i < metric.n; ++i)
        for (int j = i + 1; j < metric.n; ++j) {
            dist[i][j] = metric.edges[pairs[i][j]].cost;
            dist[j][i] = dist[i][j];
        }

    SteinerDpResult dp = steiner_tree_dp(dist, terminals);
    out.dp_updates = dp.updates;
    out.cost = dp.cost;

    std::vector<int> metric_ids;
    metric_ids.reserve(dp.edges.size());
    for (auto [a, b] : dp.edges) metric_ids.push_back(pairs[a][b]);
    std::vector<char> protect(metric.n, 0);
    for (int t : terminals) protect[t] = 1;
    metric_ids = canonicalize_metric_tree(metric, pairs, std::move(metric_ids), protect);

    // back to host edges through the recorded shortest paths
    std::set<int> host;
    for (int id : metric_ids)
        for (int hid : full_closure.edge_paths[id]) host.insert(hid);
    std::vector<int> union_ids(host.begin(), host.end());
    std::vector<Edge> union_edges;
    union_edges.reserve(union_ids.size());
    for (int id : union_ids) union_edges.push_back(g.edges[id]);
    UnionFind uf(g.n);
    MstPick pick = kruskal(union_edges, uf);
    std::set<int> final_ids;
    for (int pos : pick.kept) final_ids.insert(union_ids[pos]);
    for (;;) {
        std::map<int, std::vector<int>> incident;
        for (int id : final_ids) {
            incident[g.edges[id].u].push_back(id);
            incident[g.edges[id].v].push_back(id);
        }
        bool removed = false;
        for (const auto& [v, inc] : incident) {
            if (!g.is_terminal(v) && inc.size() == 1) {
                final_ids.erase(inc[0]);
                removed = true;
                break;
            }
        }
        if (!removed) break;
    }
    out.tree_edges.assign(final_ids.begin(), final_ids.end());

    Rat expanded = 0;
    for (int id : out.tree_edges) expanded += g.edges[id].cost;
    if (cmp(expanded, out.cost) != 0)
        throw Error("exact_steiner: expanded tree cost drifted from the DP optimum");
    return out;
}

Rat gap(const ExactResult& exact, const LpSolution& lp) {
    if (lp.lp_star == 0) {
        if (exact.cost == 0) return Rat(1);
        throw Error("gap: lp* is zero on an instance with positive optimum");
    }
    return exact.cost / lp.lp_star;
}

}  // namespace steiner
