#include <doctest.h>

#include <random>
#include <set>

#include "swingnet/grid.hpp"
#include "test_helpers.hpp"

using namespace swingnet;
using swingnet::testing::five_node_grid;
using swingnet::testing::two_node_grid;

TEST_CASE("validate_grid accepts a balanced two-node grid") {
    CHECK(validate_grid(two_node_grid()).empty());
}

TEST_CASE("validate_grid reports a duplicated edge") {
    GridTopology g({{1, 1.0, 1, 1}, {2, -1.0, 1, 1}}, {{1, 2, 1.0}, {2, 1, 2.0}});
    auto violations = validate_grid(g);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "duplicate-edge");
}

TEST_CASE("validate_grid reports nonpositive damping") {
    GridTopology g({{1, 1.0, 1, 0.0}, {2, -1.0, 1, 1}}, {{1, 2, 1.0}});
    auto violations = validate_grid(g);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "nonpositive-damping");
    CHECK(violations[0].detail.find("node 1") != std::string::npos);
}

TEST_CASE("validate_grid reports power imbalance") {
    GridTopology g({{1, 1.0, 1, 1}, {2, -0.5, 1, 1}}, {{1, 2, 1.0}});
    auto violations = validate_grid(g);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "power-imbalance");
}

TEST_CASE("remove_edge drops exactly one edge and keeps power balance") {
    GridTopology g = five_node_grid();
    GridTopology g2 = remove_edge(g, 2, 3);
    CHECK(g2.node_count() == 5);
    CHECK(g2.edge_count() == g.edge_count() - 1);
    CHECK(!g2.has_edge(2, 3));
    CHECK(g.has_edge(2, 3));  // original untouched
    CHECK(validate_grid(g2).empty());
}

TEST_CASE("remove_edge on a missing edge throws") {
    CHECK_THROWS_AS((void)remove_edge(five_node_grid(), 1, 4), GridError);
}

TEST_CASE("remove_node drops the node and its incident edges") {
    GridTopology g2 = remove_node(five_node_grid(), 2);
    CHECK(g2.node_count() == 4);
    CHECK(!g2.has_node(2));
    for (const auto& e : g2.edges()) {
        CHECK(e.a != 2);
        CHECK(e.b != 2);
    }
    CHECK(g2.edge_count() == 4);  // edges (1,2), (2,3), (2,4) gone
}

TEST_CASE("remove_node on an isolated node keeps the edge set") {
    GridTopology g({{1, 1.0, 1, 1}, {2, -1.0, 1, 1}, {3, 0.0, 1, 1}}, {{1, 2, 1.0}});
    GridTopology g2 = remove_node(g, 3);
    CHECK(g2.edge_count() == 1);
    CHECK_THROWS_AS((void)remove_node(g, 99), GridError);
}

TEST_CASE("connected_components partitions the nodes") {
    CHECK(connected_components(five_node_grid()).size() == 1);
    CHECK(connected_components(five_node_grid())[0].size() == 5);

    GridTopology pairs({{1, 1, 1, 1}, {2, -1, 1, 1}, {3, 1, 1, 1}, {4, -1, 1, 1}},
                       {{1, 2, 1.0}, {3, 4, 1.0}});
    auto comps = connected_components(pairs);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<NodeId>{1, 2});
    CHECK(comps[1] == std::vector<NodeId>{3, 4});

    CHECK(connected_components(GridTopology{}).empty());
}

TEST_CASE("remove_edge then re-adding restores the edge set") {
    GridTopology g = five_node_grid();
    GridTopology g2 = remove_edge(g, 2, 3);
    auto edges = g2.edges();
    edges.push_back(g.edge(2, 3));
    GridTopology g3(g.nodes(), edges);
    REQUIRE(g3.edge_count() == g.edge_count());
    for (int k = 0; k < g.edge_count(); ++k) {
        CHECK(g3.edges()[k].a == g.edges()[k].a);
        CHECK(g3.edges()[k].b == g.edges()[k].b);
        CHECK(g3.edges()[k].coupling == g.edges()[k].coupling);
    }
}

TEST_CASE("components are disjoint and cover every node") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        GridTopology g = swingnet::testing::random_connected_grid(rng, 8, 3);
        // random deletions may split it
        GridTopology cut = remove_edge(g, g.edges()[trial % g.edge_count()].a,
                                       g.edges()[trial % g.edge_count()].b);
        auto comps = connected_components(cut);
        std::set<NodeId> all;
        std::size_t total = 0;
        for (const auto& c : comps) {
            total += c.size();
            all.insert(c.begin(), c.end());
        }
        CHECK(total == all.size());            // disjoint
        CHECK((int)all.size() == cut.node_count());  // cover
    }
}
