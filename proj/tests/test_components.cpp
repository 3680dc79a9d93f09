#include <doctest.h>

#include <algorithm>
#include <map>

#include "steiner/components.hpp"
#include "steiner/instance.hpp"
#include "support/oracles.hpp"

using namespace steiner;

namespace {

MetricClosure full_closure_of(const Graph& g) {
    std::vector<int> all(g.n);
    for (int v = 0; v < g.n; ++v) all[v] = v;
    return metric_closure(g, all);
}

}  // namespace

TEST_CASE("two-terminal component is the direct metric edge") {
    // u=0, v=1 terminals at metric distance 5
    Graph g(3, {0, 1});
    g.add_edge(0, 2, Rat(4));
    g.add_edge(2, 1, Rat(4));
    g.add_edge(0, 1, Rat(5));
    const Graph metric = full_closure_of(g).graph;
    const ComponentBuild b = optimal_full_component(metric, {0, 1});
    REQUIRE(b.component.has_value());
    CHECK(b.component->cost == Rat(5));
    CHECK(b.component->tree_edges.size() == 1);
    CHECK(b.component->loss_cost == Rat(0));
    CHECK(b.component->loss_edges.empty());
}

TEST_CASE("the unit star is the optimal component for all three leaves") {
    const Graph metric = full_closure_of(testing::three_star()).graph;
    const ComponentBuild b = optimal_full_component(metric, {0, 1, 2});
    REQUIRE(b.component.has_value());
    CHECK(b.component->cost == Rat(3));
    CHECK(b.component->tree_edges.size() == 3);
    CHECK(b.component->cost == testing::brute_force_component(metric, {0, 1, 2}));
}

TEST_CASE("cost ties prefer the component without Steiner vertices") {
    // direct a-b metric edge costs the same 2 as the path through the star
    const Graph metric = full_closure_of(testing::three_star()).graph;
    const ComponentBuild b = optimal_full_component(metric, {0, 1});
    REQUIRE(b.component.has_value());
    CHECK(b.component->cost == Rat(2));
    REQUIRE(b.component->tree_edges.size() == 1);
    const Edge& e = metric.edges[b.component->tree_edges[0]];
    CHECK(((e.u == 0 && e.v == 1) || (e.u == 1 && e.v == 0)));
}

TEST_CASE("terminal sets with an internal terminal are discarded") {
    // collinear terminals: the b-in-the-middle optimum cannot be a full component
    Graph g(3, {0, 1, 2});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(1));
    const Graph metric = full_closure_of(g).graph;
    const ComponentBuild b = optimal_full_component(metric, {0, 1, 2});
    CHECK(!b.component.has_value());
    CHECK(b.connected);
    CHECK(b.tree_cost == Rat(2));
    CHECK(b.discard_reason == "optimal tree keeps a terminal internal");
}

TEST_CASE("loss of a two-edge path component keeps the cheap side") {
    // component tree u-s-v with costs 2 and 3 given explicitly
    Graph g(3, {0, 2});
    g.add_edge(0, 1, Rat(2));  // u-s
    g.add_edge(1, 2, Rat(3));  // s-v
    g.add_edge(0, 2, Rat(5));
    const EdgeSet loss = compute_loss(g, {0, 1});
    CHECK(loss.ids == std::vector<int>{0});
    CHECK(loss.total_cost == Rat(2));
}

TEST_CASE("a component without Steiner vertices has empty loss") {
    Graph g(2, {0, 1});
    g.add_edge(0, 1, Rat(5));
    const EdgeSet loss = compute_loss(g, {0});
    CHECK(loss.ids.empty());
    CHECK(loss.total_cost == Rat(0));
}

TEST_CASE("star loss picks one unit edge by id and stays below half the cost") {
    const Graph g = testing::three_star();
    const EdgeSet loss = compute_loss(g, {0, 1, 2});
    CHECK(loss.ids == std::vector<int>{0});
    CHECK(loss.total_cost == Rat(1));
    CHECK(2 * loss.total_cost <= Rat(3));
}

TEST_CASE("loss contraction of the two-edge path yields one surviving edge") {
    Graph g(3, {0, 2});
    g.add_edge(0, 1, Rat(2));
    g.add_edge(1, 2, Rat(3));
    std::vector<int> term_index(3, -1);
    term_index[0] = 0;
    term_index[2] = 1;
    const LossContraction lc = loss_contract(g, {0, 1}, {0}, term_index);
    REQUIRE(lc.lc_edges.size() == 1);
    CHECK(lc.lc_edges[0].a == 0);
    CHECK(lc.lc_edges[0].b == 1);
    CHECK(lc.lc_edges[0].cost == Rat(3));
    CHECK(lc.lc_edges[0].backing_edge == 1);
    REQUIRE(lc.steiner_representatives.size() == 1);
    CHECK(lc.steiner_representatives[0] == std::pair<int, int>{1, 0});
}

TEST_CASE("loss contraction of a loss-free single edge keeps it unchanged") {
    Graph g(2, {0, 1});
    g.add_edge(0, 1, Rat(5));
    std::vector<int> term_index{0, 1};
    const LossContraction lc = loss_contract(g, {0}, {}, term_index);
    REQUIRE(lc.lc_edges.size() == 1);
    CHECK(lc.lc_edges[0].cost == Rat(5));
    CHECK(lc.steiner_representatives.empty());
}

TEST_CASE("loss contraction of the star collapses the center onto terminal a") {
    const Graph g = testing::three_star();
    std::vector<int> term_index{0, 1, 2, -1};
    const LossContraction lc = loss_contract(g, {0, 1, 2}, {0}, term_index);
    REQUIRE(lc.lc_edges.size() == 2);
    CHECK(lc.lc_edges[0].a == 0);
    CHECK(lc.lc_edges[0].b == 1);
    CHECK(lc.lc_edges[0].cost == Rat(1));
    CHECK(lc.lc_edges[1].a == 0);
    CHECK(lc.lc_edges[1].b == 2);
    REQUIRE(lc.steiner_representatives.size() == 1);
    CHECK(lc.steiner_representatives[0] == std::pair<int, int>{3, 0});
}

TEST_CASE("loss contraction rejects a loss forest with a two-terminal fragment") {
    Graph g(3, {0, 2});
    g.add_edge(0, 1, Rat(2));
    g.add_edge(1, 2, Rat(3));
    std::vector<int> term_index(3, -1);
    term_index[0] = 0;
    term_index[2] = 1;
    CHECK_THROWS_AS(loss_contract(g, {0, 1}, {0, 1}, term_index), Error);
}

TEST_CASE("star catalog at r=3 holds the three pairs plus the triple") {
    const Graph metric = full_closure_of(testing::three_star()).graph;
    const Catalog catalog = enumerate_catalog(metric, 3, 1);
    REQUIRE(catalog.components.size() == 4);
    CHECK(catalog.discarded.empty());
    for (const FullComponent& fc : catalog.components) {
        if (fc.terminal_indices.size() == 2)
            CHECK(fc.cost == Rat(2));
        else
            CHECK(fc.cost == Rat(3));
    }
    CHECK(catalog.find(0b111) != nullptr);
    CHECK(catalog.find(0b111)->cost == Rat(3));
}

TEST_CASE("r=2 catalog is exactly the terminal metric edges") {
    const InstanceFile inst = testing::random_instance(52, 8, 4, GenModel::RandomMetric);
    const Graph g = to_graph(inst);
    const MetricClosure full = full_closure_of(g);
    const Catalog catalog = enumerate_catalog(full.graph, 2, 1);
    const MetricClosure term = metric_closure(g, g.terminals());
    REQUIRE(catalog.components.size() == 6);  // C(4,2)
    const auto pairs = pair_edge_index(term.graph);
    for (const FullComponent& fc : catalog.components) {
        REQUIRE(fc.terminal_indices.size() == 2);
        const int id = pairs[fc.terminal_indices[0]][fc.terminal_indices[1]];
        CHECK(fc.cost == term.graph.edges[id].cost);
    }
}

TEST_CASE("catalog size on four terminals stays within the subset count") {
    const InstanceFile inst = testing::random_instance(53, 7, 4, GenModel::Euclidean);
    const Graph g = to_graph(inst);
    const Catalog catalog = enumerate_catalog(full_closure_of(g).graph, 4, 1);
    CHECK(catalog.components.size() + catalog.discarded.size() == 11);  // C(4,2)+C(4,3)+C(4,4)
}

TEST_CASE("enumerate_catalog validates r") {
    const Graph metric = full_closure_of(testing::three_star()).graph;
    CHECK_THROWS_AS(enumerate_catalog(metric, 1, 1), Error);
    CHECK_THROWS_AS(enumerate_catalog(metric, 4, 1), Error);
}

TEST_CASE("catalog invariants hold on random instances") {
    for (int round = 0; round < 12; ++round) {
        const GenModel model = round % 3 == 0   ? GenModel::Euclidean
                               : round % 3 == 1 ? GenModel::RandomMetric
                                                : GenModel::QuasiBipartite;
        const InstanceFile inst = testing::random_instance(7000 + round, 4 + round % 6, 3, model);
        const Graph g = to_graph(inst);
        const MetricClosure full = full_closure_of(g);
        const Catalog catalog = enumerate_catalog(full.graph, 3, 1);
        for (const FullComponent& fc : catalog.components) {
            // leaf set is exactly K
            std::map<int, int> degree;
            for (int id : fc.tree_edges) {
                ++degree[full.graph.edges[id].u];
                ++degree[full.graph.edges[id].v];
            }
            for (int v : fc.terminal_vertices) CHECK(degree.at(v) == 1);
            for (const auto& [v, d] : degree)
                if (std::find(fc.terminal_vertices.begin(), fc.terminal_vertices.end(), v) ==
                    fc.terminal_vertices.end())
                    CHECK(d >= 3);
            // loss below half the cost, lc edges carry the remainder
            CHECK(2 * fc.loss_cost <= fc.cost);
            Rat lc_total = 0;
            for (const LcEdge& e : fc.lc_edges) lc_total += e.cost;
            CHECK(lc_total == fc.cost - fc.loss_cost);
            CHECK(fc.lc_edges.size() == fc.tree_edges.size() - fc.loss_edges.size());
            // brute-force agreement
            CHECK(fc.cost == testing::brute_force_component(full.graph, fc.terminal_vertices));
        }
        for (const DiscardedSet& d : catalog.discarded) {
            CHECK(!d.reason.empty());
            if (d.has_cost) {
                std::vector<int> k_vertices;
                for (int b = 0; b < catalog.terminal_count; ++b)
                    if (d.mask & (TerminalMask{1} << b))
                        k_vertices.push_back(catalog.terminal_vertices[b]);
                CHECK(d.tree_cost == testing::brute_force_component(full.graph, k_vertices));
            }
        }
    }
}

TEST_CASE("disconnected terminal sets are discarded with a reason") {
    // K's two terminals can only reach each other through a third terminal
    Graph g(3, {0, 1, 2});
    g.add_edge(0, 1, Rat(1));
    g.add_edge(1, 2, Rat(1));
    // raw graph, not a closure: removing terminal 1 separates 0 from 2
    const ComponentBuild b = optimal_full_component(g, {0, 2});
    CHECK(!b.component.has_value());
    CHECK(!b.connected);
    CHECK(b.discard_reason == "terminals unreachable without other terminals");
}
