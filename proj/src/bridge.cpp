#include "steiner/bridge.hpp"

#include <algorithm>

namespace steiner {

namespace {

std::vector<Edge> tree_edge_list(const TerminalTree& tree) {
    std::vector<Edge> edges;
    edges.reserve(tree.edges.size());
    for (const TreeEdge& e : tree.edges) edges.push_back(Edge{e.u, e.v, e.cost});
    return edges;
}

// max edge cost on the unique a-b path of the tree
Rat path_max_cost(const TerminalTree& tree, int a, int b) {
    const int n = tree.terminal_count;
    std::vector<std::vector<std::pair<int, const Rat*>>> adj(n);
    for (const TreeEdge& e : tree.edges) {
        adj[e.u].emplace_back(e.v, &e.cost);
        adj[e.v].emplace_back(e.u, &e.cost);
    }
    std::vector<int> stack{a};
    std::vector<char> seen(n, 0);
    std::vector<std::pair<int, const Rat*>> from(n, {-1, nullptr});
    seen[a] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (v == b) break;
        for (const auto& [to, cost] : adj[v]) {
            if (seen[to]) continue;
            seen[to] = 1;
            from[to] = {v, cost};
            stack.push_back(to);
        }
    }
    if (!seen[b]) throw Error("path_max_cost: tree does not connect the queried pair");
    Rat best(-1);
    for (int v = b; v != a; v = from[v].first) best = std::max(best, *from[v].second);
    return best;
}

}  // namespace

DropResult drop(const TerminalTree& tree, TerminalMask k_mask) {
    DropResult out;
    out.mask = k_mask;
    out.drop_cost = 0;
    if (k_mask >= (TerminalMask{1} << tree.terminal_count))
        throw Error("drop: component terminals are not spanned by the tree");

    UnionFind uf(tree.terminal_count);
    int prev = -1;
    for (int b = 0; b < tree.terminal_count; ++b) {
        if (!(k_mask & (TerminalMask{1} << b))) continue;
        if (prev >= 0) uf.unite(prev, b);
        prev = b;
    }
    const std::vector<Edge> edges = tree_edge_list(tree);
    MstPick pick = kruskal(edges, uf);
    out.dropped_positions = std::move(pick.dropped);
    std::sort(out.dropped_positions.begin(), out.dropped_positions.end());
    for (int pos : out.dropped_positions) out.drop_cost += tree.edges[pos].cost;
    const int members = __builtin_popcount(k_mask);
    if (static_cast<int>(out.dropped_positions.size()) != std::max(members - 1, 0))
        throw Error("drop: evicted edge count differs from |K| - 1");
    return out;
}

BridgeCertificate bridge_certificate(const TerminalTree& tree, const LpSolution& x,
                                     const Catalog& catalog, int threads) {
    BridgeCertificate cert;
    cert.lhs = 0;
    cert.tree_cost = tree.cost();
    cert.h.n = tree.terminal_count;

    Rat cross_check = 0;  // sum of c_e z_e, must equal lhs
    for (std::size_t c = 0; c < catalog.components.size(); ++c) {
        if (x.x[c] == 0) continue;
        const FullComponent& fc = catalog.components[c];
        DropResult dr = drop(tree, fc.mask);
        cert.lhs += x.x[c] * dr.drop_cost;

        if (static_cast<int>(dr.dropped_positions.size()) !=
            static_cast<int>(fc.terminal_indices.size()) - 1)
            throw Error("bridge_certificate: drop size differs from |K| - 1");

        // components of T minus the dropped edges, each owning one K-terminal
        UnionFind kept_uf(tree.terminal_count);
        {
            std::vector<char> dropped(tree.edges.size(), 0);
            for (int pos : dr.dropped_positions) dropped[pos] = 1;
            for (std::size_t pos = 0; pos < tree.edges.size(); ++pos)
                if (!dropped[pos]) kept_uf.unite(tree.edges[pos].u, tree.edges[pos].v);
        }
        std::vector<int> owner(tree.terminal_count, -1);
        for (int t : fc.terminal_indices) {
            const int root = kept_uf.find(t);
            if (owner[root] >= 0)
                throw Error("bridge_certificate: two component terminals share a kept fragment");
            owner[root] = t;
        }
        for (int pos : dr.dropped_positions) {
            const TreeEdge& e = tree.edges[pos];
            const int a = owner[kept_uf.find(e.u)];
            const int b = owner[kept_uf.find(e.v)];
            if (a < 0 || b < 0 || a == b)
                throw Error("bridge_certificate: dropped edge does not bridge two K-fragments");
            cert.h.edges.push_back(Edge{std::min(a, b), std::max(a, b), e.cost});
            cert.z.push_back(x.x[c]);
            cert.source_component.push_back(static_cast<int>(c));
            cross_check += e.cost * x.x[c];
        }
    }
    if (cmp(cross_check, cert.lhs) != 0)
        throw Error("bridge_certificate: edge-weight total disagrees with the drop total");

    cert.inequality_ok = cmp(cert.lhs, cert.tree_cost) >= 0;
    cert.polytope = check_spanning_tree_polytope(SpanningTreePolytopePoint{cert.h, cert.z}, threads);

    cert.max_cycle_ok = true;
    for (std::size_t e = 0; e < cert.h.edges.size(); ++e) {
        if (cmp(cert.h.edges[e].cost, path_max_cost(tree, cert.h.edges[e].u, cert.h.edges[e].v)) < 0) {
            cert.max_cycle_ok = false;
            break;
        }
    }
    return cert;
}

}  // namespace steiner
