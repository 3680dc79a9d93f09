#pragma once

#include <string>
#include <vector>

#include "steiner/rational.hpp"

namespace steiner {

// Two vertices that an operation needed to connect but could not.
class DisconnectedError : public Error {
public:
    DisconnectedError(int u, int v)
        : Error("graph is disconnected: no path between vertices " + std::to_string(u) +
                " and " + std::to_string(v)),
          u(u),
          v(v) {}
    int u, v;
};

struct Edge {
    int u = -1, v = -1;
    Rat cost;
};

// Weighted undirected multigraph with a terminal/Steiner split. Edge ids
// are positions in `edges`. Graphs are immutable once built and safe to
// share across threads.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<char> terminal;  // size n

    Graph() = default;
    explicit Graph(int vertices) : n(vertices), terminal(vertices, 0) {}
    Graph(int vertices, const std::vector<int>& terminals);

    // Rejects self-loops, negative costs and out-of-range endpoints;
    // parallel edges are fine. Returns the edge id.
    int add_edge(int u, int v, Rat cost);

    bool is_terminal(int v) const { return terminal[v] != 0; }
    std::vector<int> terminals() const;  // ascending vertex ids
    int terminal_count() const;
    Rat total_cost() const;
};

struct EdgeSet {
    std::vector<int> ids;  // host-graph edge ids
    Rat total_cost;
};

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1), components_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int v);
    bool unite(int a, int b);  // false if already joined
    int components() const { return components_; }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    int components_;
};

// Kruskal over an explicit edge list, processed by (cost, position).
// `uf` may arrive with vertices pre-merged (contractions). Positions of
// accepted and rejected edges come back in processing order.
struct MstPick {
    std::vector<int> kept;
    std::vector<int> dropped;
    Rat kept_cost;
};
MstPick kruskal(const std::vector<Edge>& edges, UnionFind& uf);

// Minimum spanning tree with the fixed (cost, edge id) tie-break; the
// returned edge set is deterministic. Throws DisconnectedError naming a
// separated vertex pair.
EdgeSet mst(const Graph& g);

// Complete graph on `subset` whose costs are exact shortest-path
// distances in `g`; remembers one shortest path per pair for expanding
// closure edges back into host edges.
struct MetricClosure {
    Graph graph;                               // vertices 0..k-1 in subset order
    std::vector<int> originals;                // closure vertex -> host vertex
    std::vector<std::vector<int>> edge_paths;  // closure edge id -> host edge ids

    int pair_edge(int i, int j) const;  // closure edge id for a vertex pair
};
MetricClosure metric_closure(const Graph& g, const std::vector<int>& subset);

// All merged vertices collapse onto one node (placed at the smallest
// merged id's slot); self-loops are dropped, parallel edges kept.
struct Contraction {
    Graph graph;
    std::vector<int> vertex_map;      // host vertex -> contracted vertex
    std::vector<int> edge_originals;  // contracted edge id -> host edge id
};
Contraction contract(const Graph& g, const std::vector<int>& merged);

// Spanning tree over the terminal index space 0..|R|-1 maintained by the
// rounding loop. Edges are metric-closure edges or loss-contracted
// component edges, tagged with where they came from.
struct TreeEdge {
    enum class Origin { Metric, LossContracted };
    int u = -1, v = -1;
    Rat cost;
    Origin origin = Origin::Metric;
    int backing_edge = -1;  // Metric: terminal-closure edge id; LC: full-closure edge id
    int component = -1;     // LC: catalog index of the originating component
};

struct TerminalTree {
    int terminal_count = 0;
    std::vector<TreeEdge> edges;
    Rat cost() const;
};

}  // namespace steiner
