#include <doctest.h>

#include <sstream>

#include "steiner/instance.hpp"
#include "steiner/rlc.hpp"
#include "support/oracles.hpp"

using namespace steiner;

namespace {

InstanceFile from_stp(const std::string& text) {
    std::istringstream in(text);
    return parse_stp(in, "inline");
}

const char* kStarFile = R"(33D32945 STP File, STP Format Version 1.0
SECTION Comment
Name "three-star"
Opt 3
END

SECTION Graph
Nodes 4
Edges 3
E 4 1 1
E 4 2 1
E 4 3 1
END

SECTION Terminals
Terminals 3
T 1
T 2
T 3
END

EOF
)";

}  // namespace

TEST_CASE("a minimal two-vertex file parses into a one-edge instance") {
    const InstanceFile inst = from_stp(
        "SECTION Graph\nNodes 2\nEdges 1\nE 1 2 5\nEND\n"
        "SECTION Terminals\nTerminals 2\nT 1\nT 2\nEND\nEOF\n");
    CHECK(inst.vertices == 2);
    REQUIRE(inst.edges.size() == 1);
    CHECK(std::get<2>(inst.edges[0]) == Rat(5));
    CHECK(inst.terminals == std::vector<int>{0, 1});
    const Graph g = to_graph(inst);
    CHECK(mst(g).total_cost == Rat(5));
}

TEST_CASE("the running star instance round-trips through both serializers") {
    const InstanceFile inst = from_stp(kStarFile);
    CHECK(inst.name == "three-star");
    REQUIRE(inst.known_opt.has_value());
    CHECK(*inst.known_opt == Rat(3));
    CHECK(inst.vertices == 4);
    CHECK(inst.edges.size() == 3);
    CHECK(inst.terminals == std::vector<int>{0, 1, 2});

    // STP round trip
    {
        std::istringstream again(to_stp(inst));
        const InstanceFile re = parse_stp(again, "re");
        CHECK(re.vertices == inst.vertices);
        CHECK(re.edges == inst.edges);
        CHECK(re.terminals == inst.terminals);
        CHECK(re.known_opt == inst.known_opt);
        CHECK(re.name == inst.name);
    }
    // JSON round trip
    {
        std::istringstream again(instance_to_json(inst));
        const InstanceFile re = parse_instance_json(again, "re");
        CHECK(re.vertices == inst.vertices);
        CHECK(re.edges == inst.edges);
        CHECK(re.terminals == inst.terminals);
        CHECK(re.known_opt == inst.known_opt);
    }
}

TEST_CASE("section order does not matter and comments are ignored") {
    const InstanceFile inst = from_stp(
        "# leading comment\n"
        "SECTION Terminals\nTerminals 2\nT 1\nT 3\nEND\n"
        "SECTION Graph\nNodes 3\nEdges 2\nE 1 2 1\nE 2 3 2.5\nEND\n"
        "EOF\n");
    CHECK(inst.terminals == std::vector<int>{0, 2});
    CHECK(std::get<2>(inst.edges[1]) == Rat(5, 2));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(from_stp("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 -3\nEND\n"
                             "SECTION Terminals\nTerminals 1\nT 1\nEND\nEOF\n"),
                    ParseError);
    try {
        from_stp("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 -3\nEND\n"
                 "SECTION Terminals\nTerminals 1\nT 1\nEND\nEOF\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
    // terminal referencing a vertex outside the graph
    CHECK_THROWS_AS(from_stp("SECTION Graph\nNodes 2\nEdges 1\nE 1 2 3\nEND\n"
                             "SECTION Terminals\nTerminals 1\nT 9\nEND\nEOF\n"),
                    ParseError);
    // declared counts must match
    CHECK_THROWS_AS(from_stp("SECTION Graph\nNodes 2\nEdges 2\nE 1 2 3\nEND\n"
                             "SECTION Terminals\nTerminals 1\nT 1\nEND\nEOF\n"),
                    ParseError);
    // missing sections
    CHECK_THROWS_AS(from_stp("SECTION Graph\nNodes 2\nEdges 0\nEND\nEOF\n"), ParseError);
    // duplicated section
    CHECK_THROWS_AS(from_stp("SECTION Graph\nNodes 2\nEdges 0\nEND\n"
                             "SECTION Graph\nNodes 2\nEdges 0\nEND\nEOF\n"),
                    ParseError);
}

TEST_CASE("json instances reject duplicate edge ids") {
    std::istringstream in(R"({"name":"x","vertices":2,
        "edges":[{"id":0,"u":1,"v":2,"cost":"1"},{"id":0,"u":2,"v":1,"cost":"2"}],
        "terminals":[1,2]})");
    CHECK_THROWS_AS(parse_instance_json(in, "x"), ParseError);
}

TEST_CASE("json instances accept the compact array edge form") {
    std::istringstream in(R"({"vertices":3,"edges":[[1,2,"1"],[2,3,"1/2"]],"terminals":[1,3]})");
    const InstanceFile inst = parse_instance_json(in, "compact");
    CHECK(inst.edges.size() == 2);
    CHECK(std::get<2>(inst.edges[1]) == Rat(1, 2));
}

TEST_CASE("generation is deterministic under the seed") {
    for (GenModel model : {GenModel::Euclidean, GenModel::RandomMetric, GenModel::QuasiBipartite}) {
        const InstanceFile a = testing::random_instance(505, 9, 4, model);
        const InstanceFile b = testing::random_instance(505, 9, 4, model);
        CHECK(to_stp(a) == to_stp(b));
        const InstanceFile c = testing::random_instance(506, 9, 4, model);
        CHECK(to_stp(a) != to_stp(c));
    }
}

TEST_CASE("the quasi-bipartite model never emits Steiner-Steiner edges") {
    for (int round = 0; round < 10; ++round) {
        const InstanceFile inst =
            testing::random_instance(660 + round, 5 + round, 2 + round % 4, GenModel::QuasiBipartite);
        const Graph g = to_graph(inst);
        CHECK(check_quasi_bipartite(g));
        CHECK_NOTHROW(mst(g));  // generated instances are connected
    }
}

TEST_CASE("euclidean instances obey the triangle inequality after closure") {
    for (int round = 0; round < 5; ++round) {
        const InstanceFile inst = testing::random_instance(770 + round, 8, 3, GenModel::Euclidean);
        const Graph g = to_graph(inst);
        std::vector<int> all(g.n);
        for (int v = 0; v < g.n; ++v) all[v] = v;
        CHECK(testing::triangle_inequality_ok(metric_closure(g, all).graph));
    }
}

TEST_CASE("generator validates its parameters") {
    GenParams p;
    p.vertices = 3;
    p.terminals = 4;
    CHECK_THROWS_AS(generate_random(p), Error);
    p.vertices = 0;
    p.terminals = 0;
    CHECK_THROWS_AS(generate_random(p), Error);
}
