#include "steiner/components.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "steiner/steiner_dp.hpp"

namespace steiner {

namespace {

int popcount(TerminalMask m) { return __builtin_popcount(m); }

}  // namespace

std::vector<int> canonicalize_metric_tree(const Graph& metric,
                                          const std::vector<std::vector<int>>& pairs,
                                          std::vector<int> edge_ids,
                                          const std::vector<char>& in_k) {
    std::sort(edge_ids.begin(), edge_ids.end());
    edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());

    {
        std::vector<Edge> edges;
        edges.reserve(edge_ids.size());
        for (int id : edge_ids) edges.push_back(metric.edges[id]);
        UnionFind uf(metric.n);
        MstPick pick = kruskal(edges, uf);
        std::vector<int> kept;
        kept.reserve(pick.kept.size());
        for (int pos : pick.kept) kept.push_back(edge_ids[pos]);
        std::sort(kept.begin(), kept.end());
        edge_ids = std::move(kept);
    }

    auto degree_map = [&] {
        std::map<int, std::vector<int>> deg;  // vertex -> incident edge ids
        for (int id : edge_ids) {
            deg[metric.edges[id].u].push_back(id);
            deg[metric.edges[id].v].push_back(id);
        }
        return deg;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        auto deg = degree_map();
        // prune Steiner leaves
        for (const auto& [v, inc] : deg) {
            if (!in_k[v] && inc.size() == 1) {
                edge_ids.erase(std::find(edge_ids.begin(), edge_ids.end(), inc[0]));
                changed = true;
                break;
            }
        }
        if (changed) continue;
        // shortcut degree-2 Steiner vertices
        for (const auto& [v, inc] : deg) {
            if (in_k[v] || inc.size() != 2) continue;
            const Edge& e1 = metric.edges[inc[0]];
            const Edge& e2 = metric.edges[inc[1]];
            const int a = e1.u == v ? e1.v : e1.u;
            const int b = e2.u == v ? e2.v : e2.u;
            const int direct = pairs[a][b];
            if (direct < 0) throw Error("canonicalize_metric_tree: metric graph is not complete");
            if (cmp(metric.edges[direct].cost, e1.cost + e2.cost) != 0)
                throw Error("canonicalize_metric_tree: shortcut changed the cost of an optimal tree");
            edge_ids.erase(std::find(edge_ids.begin(), edge_ids.end(), inc[0]));
            edge_ids.erase(std::find(edge_ids.begin(), edge_ids.end(), inc[1]));
            edge_ids.push_back(direct);
            std::sort(edge_ids.begin(), edge_ids.end());
            changed = true;
            break;
        }
    }
    return edge_ids;
}

namespace {

ComponentBuild build_component(const Graph& metric, const std::vector<std::vector<int>>& pairs,
                               const std::vector<int>& terminal_index_of_vertex,
                               const std::vector<int>& k_vertices) {
    if (k_vertices.size() < 2) throw Error("optimal_full_component: |K| must be at least 2");
    std::vector<char> in_k(metric.n, 0);
    for (int v : k_vertices) {
        if (v < 0 || v >= metric.n || !metric.is_terminal(v))
            throw Error("optimal_full_component: K contains a non-terminal vertex");
        in_k[v] = 1;
    }

    // keep K plus every Steiner vertex; other terminals are removed
    std::vector<int> kept;
    for (int v = 0; v < metric.n; ++v)
        if (in_k[v] || !metric.is_terminal(v)) kept.push_back(v);

    ComponentBuild out;

    // connectivity among K in the induced subgraph
    {
        std::vector<char> keep_mask(metric.n, 0);
        for (int v : kept) keep_mask[v] = 1;
        UnionFind uf(metric.n);
        for (const Edge& e : metric.edges)
            if (keep_mask[e.u] && keep_mask[e.v]) uf.unite(e.u, e.v);
        for (std::size_t i = 1; i < k_vertices.size(); ++i) {
            if (uf.find(k_vertices[i]) != uf.find(k_vertices[0])) {
                out.connected = false;
                out.discard_reason = "terminals unreachable without other terminals";
                return out;
            }
        }
    }
    out.connected = true;

    const int m = static_cast<int>(kept.size());
    std::vector<std::vector<Rat>> dist(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const int id = pairs[kept[i]][kept[j]];
            if (id < 0) throw Error("optimal_full_component: metric graph is not complete");
            dist[i][j] = metric.edges[id].cost;
            dist[j][i] = dist[i][j];
        }
    }
    std::vector<int> local_terms;
    std::vector<int> to_local(metric.n, -1);
    for (int i = 0; i < m; ++i) to_local[kept[i]] = i;
    for (int v : k_vertices) local_terms.push_back(to_local[v]);

    SteinerDpResult dp = steiner_tree_dp(dist, local_terms);
    out.tree_cost = dp.cost;

    std::vector<int> ids;
    ids.reserve(dp.edges.size());
    for (auto [a, b] : dp.edges) ids.push_back(pairs[kept[a]][kept[b]]);
    ids = canonicalize_metric_tree(metric, pairs, std::move(ids), in_k);

    Rat canonical_cost = 0;
    for (int id : ids) canonical_cost += metric.edges[id].cost;
    if (cmp(canonical_cost, dp.cost) != 0)
        throw Error("optimal_full_component: canonical tree cost drifted from the optimum");

    // leaf set must be exactly K
    std::map<int, int> degree;
    for (int id : ids) {
        ++degree[metric.edges[id].u];
        ++degree[metric.edges[id].v];
    }
    for (int v : k_vertices) {
        auto it = degree.find(v);
        if (it == degree.end()) throw Error("optimal_full_component: terminal missing from tree");
        if (it->second > 1) {
            out.discard_reason = "optimal tree keeps a terminal internal";
            return out;
        }
    }

    FullComponent fc;
    fc.terminal_vertices = k_vertices;
    for (int v : k_vertices) {
        fc.mask |= TerminalMask{1} << terminal_index_of_vertex[v];
        fc.terminal_indices.push_back(terminal_index_of_vertex[v]);
    }
    fc.tree_edges = std::move(ids);
    fc.cost = dp.cost;

    EdgeSet loss = compute_loss(metric, fc.tree_edges);
    fc.loss_edges = std::move(loss.ids);
    fc.loss_cost = std::move(loss.total_cost);

    LossContraction lc = loss_contract(metric, fc.tree_edges, fc.loss_edges, terminal_index_of_vertex);
    fc.lc_edges = std::move(lc.lc_edges);
    fc.steiner_representatives = std::move(lc.steiner_representatives);

    out.component = std::move(fc);
    return out;
}

}  // namespace

const FullComponent* Catalog::find(TerminalMask mask) const {
    auto it = std::lower_bound(components.begin(), components.end(), mask,
                               [](const FullComponent& fc, TerminalMask m) { return fc.mask < m; });
    if (it == components.end() || it->mask != mask) return nullptr;
    return &*it;
}


std::vector<std::vector<int>> pair_edge_index(const Graph& g) {
    std::vector<std::vector<int>> pairs(g.n, std::vector<int>(g.n, -1));
    for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
        const Edge& e = g.edges[id];
        const int cur = pairs[e.u][e.v];
        if (cur < 0 || cmp(e.cost, g.edges[cur].cost) < 0) {
            pairs[e.u][e.v] = id;
            pairs[e.v][e.u] = id;
        }
    }
    return pairs;
}

ComponentBuild optimal_full_component(const Graph& metric, const std::vector<int>& k_vertices) {
    const std::vector<std::vector<int>> pairs = pair_edge_index(metric);
    std::vector<int> term_index(metric.n, -1);
    int idx = 0;
    for (int v = 0; v < metric.n; ++v)
        if (metric.is_terminal(v)) term_index[v] = idx++;
    std::vector<int> k_sorted = k_vertices;
    std::sort(k_sorted.begin(), k_sorted.end());
    return build_component(metric, pairs, term_index, k_sorted);
}

EdgeSet compute_loss(const Graph& metric, const std::vector<int>& tree_edges) {
    UnionFind uf(metric.n);
    int first_terminal = -1;
    for (int id : tree_edges) {
        for (int v : {metric.edges[id].u, metric.edges[id].v}) {
            if (!metric.is_terminal(v)) continue;
            if (first_terminal < 0)
                first_terminal = v;
            else
                uf.unite(first_terminal, v);
        }
    }
    std::vector<Edge> edges;
    edges.reserve(tree_edges.size());
    std::vector<int> sorted_ids = tree_edges;
    std::sort(sorted_ids.begin(), sorted_ids.end());
    for (int id : sorted_ids) edges.push_back(metric.edges[id]);
    MstPick pick = kruskal(edges, uf);
    EdgeSet out;
    out.total_cost = std::move(pick.kept_cost);
    for (int pos : pick.kept) out.ids.push_back(sorted_ids[pos]);
    std::sort(out.ids.begin(), out.ids.end());
    return out;
}

LossContraction loss_contract(const Graph& metric, const std::vector<int>& tree_edges,
                              const std::vector<int>& loss_edges,
                              const std::vector<int>& terminal_index_of_vertex) {
    UnionFind uf(metric.n);
    for (int id : loss_edges) uf.unite(metric.edges[id].u, metric.edges[id].v);

    std::set<int> vertices;
    for (int id : tree_edges) {
        vertices.insert(metric.edges[id].u);
        vertices.insert(metric.edges[id].v);
    }
    std::map<int, int> terminal_of_root;
    for (int v : vertices) {
        if (!metric.is_terminal(v)) continue;
        const int root = uf.find(v);
        if (terminal_of_root.count(root))
            throw Error("loss_contract: a loss-forest component holds two terminals");
        terminal_of_root[root] = v;
    }

    LossContraction out;
    std::set<int> loss_set(loss_edges.begin(), loss_edges.end());
    for (int v : vertices) {
        if (metric.is_terminal(v)) continue;
        auto it = terminal_of_root.find(uf.find(v));
        if (it == terminal_of_root.end())
            throw Error("loss_contract: a loss-forest component holds no terminal");
        out.steiner_representatives.emplace_back(v, it->second);
    }
    for (int id : tree_edges) {
        if (loss_set.count(id)) continue;
        const Edge& e = metric.edges[id];
        auto rep = [&](int v) {
            auto it = terminal_of_root.find(uf.find(v));
            if (it == terminal_of_root.end())
                throw Error("loss_contract: a loss-forest component holds no terminal");
            return it->second;
        };
        const int ra = rep(e.u), rb = rep(e.v);
        if (ra == rb) throw Error("loss_contract: surviving edge folds into one terminal");
        LcEdge lc;
        lc.a = terminal_index_of_vertex[ra];
        lc.b = terminal_index_of_vertex[rb];
        if (lc.a > lc.b) std::swap(lc.a, lc.b);
        lc.cost = e.cost;
        lc.backing_edge = id;
        out.lc_edges.push_back(lc);
    }
    return out;
}

Catalog enumerate_catalog(const Graph& metric, int r, int threads) {
    const std::vector<int> terminals = metric.terminals();
    const int k = static_cast<int>(terminals.size());
    if (k < 2) throw Error("enumerate_catalog: need at least two terminals");
    if (k > 31) throw Error("enumerate_catalog: too many terminals for mask enumeration");
    if (r < 2 || r > k)
        throw Error("enumerate_catalog: r = " + std::to_string(r) + " out of range [2, " +
                    std::to_string(k) + "]");

    const std::vector<std::vector<int>> pairs = pair_edge_index(metric);
    std::vector<int> term_index(metric.n, -1);
    for (int i = 0; i < k; ++i) term_index[terminals[i]] = i;

    std::vector<TerminalMask> masks;
    for (TerminalMask mask = 1; mask < (TerminalMask{1} << k); ++mask) {
        const int size = popcount(mask);
        if (size >= 2 && size <= r) masks.push_back(mask);
    }

    std::vector<ComponentBuild> builds(masks.size());
    const int nt = threads > 1 ? threads : 1;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (std::size_t i = 0; i < masks.size(); ++i) {
        std::vector<int> k_vertices;
        for (int b = 0; b < k; ++b)
            if (masks[i] & (TerminalMask{1} << b)) k_vertices.push_back(terminals[b]);
        builds[i] = build_component(metric, pairs, term_index, k_vertices);
    }
    (void)nt;

    Catalog catalog;
    catalog.r = r;
    catalog.terminal_count = k;
    catalog.terminal_vertices = terminals;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (builds[i].component) {
            catalog.components.push_back(std::move(*builds[i].component));
        } else {
            DiscardedSet d;
            d.mask = masks[i];
            d.reason = builds[i].discard_reason;
            d.has_cost = builds[i].connected;
            if (d.has_cost) d.tree_cost = builds[i].tree_cost;
            catalog.discarded.push_back(std::move(d));
        }
    }
    return catalog;
}

Catalog enumerate_catalog_serial(const Graph& metric, int r) { return enumerate_catalog(metric, r, 1); }

}  // namespace steiner
