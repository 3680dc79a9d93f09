#include <doctest.h>

#include <algorithm>

#include "steiner/graph.hpp"
#include "support/oracles.hpp"

using namespace steiner;

TEST_CASE("graph construction enforces the basic invariants") {
    Graph g(3, {0, 2});
    CHECK(g.terminal_count() == 2);
    CHECK(g.terminals() == std::vector<int>{0, 2});
    CHECK_THROWS_AS(g.add_edge(0, 0, Rat(1)), Error);
    CHECK_THROWS_AS(g.add_edge(0, 1, Rat(-1)), Error);
    CHECK_THROWS_AS(g.add_edge(0, 5, Rat(1)), Error);
    g.add_edge(0, 1, Rat(2));
    g.add_edge(0, 1, Rat(3));  // parallel edges are allowed
    CHECK(g.edges.size() == 2);
    CHECK_THROWS_AS(Graph(2, {5}), Error);
}

TEST_CASE("mst on a triangle picks the two cheap edges") {
    Graph g(3, {0, 1, 2});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(2));
    g.add_edge(0, 2, Rat(3));
    const EdgeSet t = mst(g);
    CHECK(t.ids == std::vector<int>{0, 1});
    CHECK(t.total_cost == Rat(3));
}

TEST_CASE("a tree is its own mst") {
    const Graph g = testing::three_star();
    const EdgeSet t = mst(g);
    CHECK(t.ids.size() == 3);
    CHECK(t.total_cost == Rat(3));
}

TEST_CASE("equal-cost 4-cycle: every spanning tree costs 3, tie-break picks low ids") {
    Graph g(4, {0, 1, 2, 3});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(1));
    g.add_edge(2, 3, Rat(1));
    g.add_edge(3, 0, Rat(1));
    for (const auto& tree : testing::all_spanning_trees(g)) {
        Rat cost = 0;
        for (int id : tree) cost += g.edges[id].cost;
        CHECK(cost == Rat(3));
    }
    CHECK(testing::all_spanning_trees(g).size() == 4);
    const EdgeSet t = mst(g);
    CHECK(t.ids == std::vector<int>{0, 1, 2});
}

TEST_CASE("mst cost ignores edge insertion order") {
    SplitMix64 rng(7);
    for (int round = 0; round < 20; ++round) {
        const InstanceFile inst = testing::random_instance(1000 + round, 7, 3, GenModel::RandomMetric);
        Graph g = to_graph(inst);
        const Rat base = mst(g).total_cost;
        // shuffle edges into a new graph
        Graph h(g.n);
        h.terminal = g.terminal;
        std::vector<int> order(g.edges.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
            std::swap(order[i], order[rng.next_below(i + 1)]);
        for (int id : order) h.add_edge(g.edges[id].u, g.edges[id].v, g.edges[id].cost);
        CHECK(mst(h).total_cost == base);
    }
}

TEST_CASE("mst reports a separated pair on disconnected input") {
    Graph g(4, {0, 3});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(2, 3, Rat(1));
    CHECK_THROWS_AS(mst(g), DisconnectedError);
    try {
        mst(g);
    } catch (const DisconnectedError& e) {
        CHECK(e.u == 0);
        CHECK(e.v == 2);
    }
}

TEST_CASE("metric closure of a path over its endpoints") {
    Graph g(3, {0, 2});
    g.add_edge(0, 1, Rat(2));
    g.add_edge(1, 2, Rat(3));
    const MetricClosure mc = metric_closure(g, {0, 2});
    CHECK(mc.graph.n == 2);
    CHECK(mc.graph.edges.size() == 1);
    CHECK(mc.graph.edges[0].cost == Rat(5));
    CHECK(mc.edge_paths[0] == std::vector<int>{0, 1});
}

TEST_CASE("metric closure of the star over its leaves is the cost-2 triangle") {
    const Graph g = testing::three_star();
    const MetricClosure mc = metric_closure(g, {0, 1, 2});
    REQUIRE(mc.graph.edges.size() == 3);
    for (const Edge& e : mc.graph.edges) CHECK(e.cost == Rat(2));
    CHECK(testing::triangle_inequality_ok(mc.graph));
}

TEST_CASE("metric closure is idempotent on complete metric graphs") {
    const InstanceFile inst = testing::random_instance(424, 6, 3, GenModel::RandomMetric);
    const Graph g = to_graph(inst);
    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    const MetricClosure once = metric_closure(g, all);
    const MetricClosure twice = metric_closure(once.graph, all);
    const auto p1 = pair_edge_index(once.graph);
    const auto p2 = pair_edge_index(twice.graph);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            CHECK(once.graph.edges[p1[i][j]].cost == twice.graph.edges[p2[i][j]].cost);
}

TEST_CASE("metric closure satisfies the triangle inequality") {
    for (int round = 0; round < 10; ++round) {
        const InstanceFile inst =
            testing::random_instance(600 + round, 8, 4, GenModel::QuasiBipartite);
        const Graph g = to_graph(inst);
        std::vector<int> all(g.n);
        for (int v = 0; v < g.n; ++v) all[v] = v;
        CHECK(testing::triangle_inequality_ok(metric_closure(g, all).graph));
    }
}

TEST_CASE("metric closure throws on disconnected subsets") {
    Graph g(4, {0, 3});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(2, 3, Rat(1));
    CHECK_THROWS_AS(metric_closure(g, {0, 3}), DisconnectedError);
}

TEST_CASE("contraction merges a pair in the triangle into parallel edges") {
    Graph g(3, {0, 1, 2});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(2));
    g.add_edge(0, 2, Rat(3));
    const Contraction c = contract(g, {0, 1});
    CHECK(c.graph.n == 2);
    CHECK(c.graph.edges.size() == 2);  // the 0-1 edge became a self-loop
    CHECK(c.vertex_map[0] == c.vertex_map[1]);
    CHECK(c.vertex_map[2] != c.vertex_map[0]);
    CHECK(c.edge_originals == std::vector<int>{1, 2});
}

TEST_CASE("contracting everything leaves a single bare vertex") {
    const Graph g = testing::three_star();
    const Contraction c = contract(g, {0, 1, 2, 3});
    CHECK(c.graph.n == 1);
    CHECK(c.graph.edges.empty());
}

TEST_CASE("contract preserves total cost minus the self-loops") {
    for (int round = 0; round < 10; ++round) {
        const InstanceFile inst = testing::random_instance(900 + round, 7, 3, GenModel::Euclidean);
        const Graph g = to_graph(inst);
        const std::vector<int> merged{0, 2, 4};
        const Contraction c = contract(g, merged);
        Rat dropped = 0;
        std::vector<char> in(g.n, 0);
        for (int v : merged) in[v] = 1;
        for (const Edge& e : g.edges)
            if (in[e.u] && in[e.v]) dropped += e.cost;
        CHECK(c.graph.total_cost() == g.total_cost() - dropped);
    }
}

TEST_CASE("contract rejects vertices outside the graph") {
    const Graph g = testing::three_star();
    CHECK_THROWS_AS(contract(g, {0, 9}), Error);
    CHECK_THROWS_AS(contract(g, {}), Error);
}

TEST_CASE("contracting terminals in a path drops one edge of the created cycle") {
    // unit path a-b-c-d-e; contracting {a, c} closes a 2-cycle through b
    Graph g(5, {0, 2, 4});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(1));
    g.add_edge(2, 3, Rat(1));
    g.add_edge(3, 4, Rat(1));
    const Contraction c = contract(g, {0, 2});
    const EdgeSet t = mst(c.graph);
    CHECK(t.total_cost == Rat(3));
    CHECK(mst(c.graph).total_cost <= mst(g).total_cost);
}

TEST_CASE("contraction never increases the mst cost") {
    for (int round = 0; round < 15; ++round) {
        const InstanceFile inst =
            testing::random_instance(3100 + round, 8, 4, GenModel::RandomMetric);
        const Graph g = to_graph(inst);
        SplitMix64 rng(round);
        std::vector<int> merged;
        for (int v = 0; v < g.n; ++v)
            if (rng.next_below(2)) merged.push_back(v);
        if (merged.size() < 2) merged = {0, 1};
        CHECK(mst(contract(g, merged).graph).total_cost <= mst(g).total_cost);
    }
}
