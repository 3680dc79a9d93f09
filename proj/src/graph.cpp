#include "steiner/graph.hpp"

#include <algorithm>
#include <numeric>

namespace steiner {

Graph::Graph(int vertices, const std::vector<int>& terminals) : n(vertices), terminal(vertices, 0) {
    for (int t : terminals) {
        if (t < 0 || t >= n) throw Error("terminal " + std::to_string(t) + " out of range");
        terminal[t] = 1;
    }
}

int Graph::add_edge(int u, int v, Rat cost) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw Error("edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
    if (cost < 0) throw Error("negative edge cost " + to_fraction_string(cost));
    edges.push_back(Edge{u, v, std::move(cost)});
    return static_cast<int>(edges.size()) - 1;
}

std::vector<int> Graph::terminals() const {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (terminal[v]) out.push_back(v);
    return out;
}

int Graph::terminal_count() const {
    int c = 0;
    for (char t : terminal) c += (t != 0);
    return c;
}

Rat Graph::total_cost() const {
    Rat sum = 0;
    for (const Edge& e : edges) sum += e.cost;
    return sum;
}

int UnionFind::find(int v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

bool UnionFind::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
}

MstPick kruskal(const std::vector<Edge>& edges, UnionFind& uf) {
    std::vector<int> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int c = cmp(edges[a].cost, edges[b].cost);
        if (c != 0) return c < 0;
        return a < b;
    });
    MstPick pick;
    pick.kept_cost = 0;
    for (int id : order) {
        if (uf.unite(edges[id].u, edges[id].v)) {
            pick.kept.push_back(id);
            pick.kept_cost += edges[id].cost;
        } else {
            pick.dropped.push_back(id);
        }
    }
    return pick;
}

EdgeSet mst(const Graph& g) {
    UnionFind uf(g.n);
    MstPick pick = kruskal(g.edges, uf);
    if (uf.components() != 1 && g.n > 0) {
        const int a = uf.find(0);
        for (int v = 1; v < g.n; ++v)
            if (uf.find(v) != a) throw DisconnectedError(0, v);
    }
    return EdgeSet{std::move(pick.kept), std::move(pick.kept_cost)};
}

int MetricClosure::pair_edge(int i, int j) const {
    const int k = graph.n;
    if (i == j || i < 0 || j < 0 || i >= k || j >= k) throw Error("pair_edge: bad vertex pair");
    if (i > j) std::swap(i, j);
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

MetricClosure metric_closure(const Graph& g, const std::vector<int>& subset) {
    if (subset.empty()) throw Error("metric_closure: empty subset");
    for (int v : subset)
        if (v < 0 || v >= g.n) throw Error("metric_closure: vertex out of range");

    // adjacency by edge id; deterministic relaxation order
    std::vector<std::vector<int>> incident(g.n);
    for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
        incident[g.edges[id].u].push_back(id);
        incident[g.edges[id].v].push_back(id);
    }

    MetricClosure out;
    const int k = static_cast<int>(subset.size());
    out.originals = subset;
    out.graph = Graph(k);
    for (int i = 0; i < k; ++i) out.graph.terminal[i] = g.terminal[subset[i]];

    // One Dijkstra pass per source; n is small, so a plain O(n^2)
    // selection loop with exact costs is fine.
    std::vector<std::vector<Rat>> dist(k, std::vector<Rat>(g.n));
    std::vector<std::vector<int>> pred(k, std::vector<int>(g.n, -1));  // edge id into vertex
    for (int si = 0; si < k; ++si) {
        const int src = subset[si];
        std::vector<char> done(g.n, 0), reached(g.n, 0);
        std::vector<Rat>& d = dist[si];
        std::vector<int>& p = pred[si];
        d[src] = 0;
        reached[src] = 1;
        for (;;) {
            int best = -1;
            for (int v = 0; v < g.n; ++v) {
                if (done[v] || !reached[v]) continue;
                if (best == -1 || cmp(d[v], d[best]) < 0) best = v;
            }
            if (best == -1) break;
            done[best] = 1;
            for (int id : incident[best]) {
                const Edge& e = g.edges[id];
                const int to = e.u == best ? e.v : e.u;
                if (done[to]) continue;
                Rat cand = d[best] + e.cost;
                if (!reached[to] || cmp(cand, d[to]) < 0) {
                    reached[to] = 1;
                    d[to] = std::move(cand);
                    p[to] = id;
                }
            }
        }
        for (int v : subset)
            if (!done[v]) throw DisconnectedError(src, v);
    }

    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            out.graph.add_edge(i, j, dist[i][subset[j]]);
            std::vector<int> path;
            int cur = subset[j];
            while (cur != subset[i]) {
                const int id = pred[i][cur];
                path.push_back(id);
                cur = g.edges[id].u == cur ? g.edges[id].v : g.edges[id].u;
            }
            std::reverse(path.begin(), path.end());
            out.edge_paths.push_back(std::move(path));
        }
    }
    return out;
}

Contraction contract(const Graph& g, const std::vector<int>& merged) {
    if (merged.empty()) throw Error("contract: empty vertex set");
    std::vector<char> in_set(g.n, 0);
    for (int v : merged) {
        if (v < 0 || v >= g.n) throw Error("contract: vertex " + std::to_string(v) + " not in graph");
        in_set[v] = 1;
    }
    int rep = g.n;
    for (int v = 0; v < g.n; ++v)
        if (in_set[v]) {
            rep = v;
            break;
        }

    Contraction out;
    out.vertex_map.assign(g.n, -1);
    int next = 0;
    bool rep_is_terminal = false;
    for (int v = 0; v < g.n; ++v)
        if (in_set[v] && g.terminal[v]) rep_is_terminal = true;
    std::vector<char> new_terminal;
    for (int v = 0; v < g.n; ++v) {
        if (in_set[v] && v != rep) continue;
        out.vertex_map[v] = next++;
        new_terminal.push_back(v == rep ? (rep_is_terminal ? 1 : 0) : g.terminal[v]);
    }
    for (int v : merged) out.vertex_map[v] = out.vertex_map[rep];

    out.graph = Graph(next);
    out.graph.terminal = std::move(new_terminal);
    for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
        const Edge& e = g.edges[id];
        const int u = out.vertex_map[e.u], v = out.vertex_map[e.v];
        if (u == v) continue;  // self-loop after merging
        out.graph.add_edge(u, v, e.cost);
        out.edge_originals.push_back(id);
    }
    return out;
}

Rat TerminalTree::cost() const {
    Rat sum = 0;
    for (const TreeEdge& e : edges) sum += e.cost;
    return sum;
}

}  // namespace steiner
