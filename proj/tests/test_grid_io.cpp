#include <doctest.h>

#include <fstream>
#include <sstream>

#include "swingnet/grid_io.hpp"
#include "test_helpers.hpp"

using namespace swingnet;

TEST_CASE("load_grid reads the bundled five-node file") {
    GridTopology g = load_grid(std::string(SWINGNET_DATA_DIR) + "/fig1a.grid");
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 7);
    CHECK(g.node(2).power == 1.5);
    CHECK(g.node(2).inertia == 1.0);
    CHECK(g.node(2).damping == 0.6);
    CHECK(g.edge(2, 3).coupling == 1.63);
    CHECK(g.degree(2) == 3);
}

TEST_CASE("parse_grid applies file defaults and explicit overrides") {
    GridTopology g = parse_grid(
        "grid v1\n"
        "default inertia 2\n"
        "default damping 0.5\n"
        "default coupling 3\n"
        "[nodes]\n"
        "1, 1.0\n"
        "2, -1.0, 4, 0.25\n"
        "[edges]\n"
        "1, 2\n");
    CHECK(g.node(1).inertia == 2.0);
    CHECK(g.node(1).damping == 0.5);
    CHECK(g.node(2).inertia == 4.0);
    CHECK(g.node(2).damping == 0.25);
    CHECK(g.edge(1, 2).coupling == 3.0);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        (void)parse_grid("grid v1\n[nodes]\n1, 1.0, 1, 1\nbogus row here\n");
        FAIL("expected a parse error");
    } catch (const GridParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("unknown section names are rejected") {
    CHECK_THROWS_AS((void)parse_grid("grid v1\n[lines]\n"), GridParseError);
}

TEST_CASE("missing version header is rejected") {
    CHECK_THROWS_AS((void)parse_grid("[nodes]\n1, 1.0, 1, 1\n"), GridParseError);
}

TEST_CASE("empty node table fails validation") {
    std::string text = "grid v1\n[nodes]\n[edges]\n";
    GridTopology g = parse_grid(text);
    auto violations = validate_grid(g);
    REQUIRE(!violations.empty());
    CHECK(violations[0].rule == "empty-grid");
}

TEST_CASE("unbalanced file fails load_grid with a power-balance violation") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "swingnet_unbalanced.grid";
    {
        std::ofstream out(tmp);
        out << "grid v1\n[nodes]\n1, 1.0, 1, 1\n2, -0.5, 1, 1\n[edges]\n1, 2, 1\n";
    }
    try {
        (void)load_grid(tmp);
        FAIL("expected a validation error");
    } catch (const GridValidationError& e) {
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].rule == "power-imbalance");
    }
    fs::remove(tmp);
}

TEST_CASE("parse(emit(g)) round-trips exactly") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        GridTopology g = swingnet::testing::random_connected_grid(rng, 6 + trial, 4, 1.7, 0.43);
        GridTopology h = parse_grid(emit_grid(g));
        REQUIRE(h.node_count() == g.node_count());
        REQUIRE(h.edge_count() == g.edge_count());
        for (int i = 0; i < g.node_count(); ++i) {
            CHECK(h.nodes()[i].id == g.nodes()[i].id);
            CHECK(h.nodes()[i].power == g.nodes()[i].power);
            CHECK(h.nodes()[i].inertia == g.nodes()[i].inertia);
            CHECK(h.nodes()[i].damping == g.nodes()[i].damping);
        }
        for (int i = 0; i < g.edge_count(); ++i) {
            CHECK(h.edges()[i].a == g.edges()[i].a);
            CHECK(h.edges()[i].b == g.edges()[i].b);
            CHECK(h.edges()[i].coupling == g.edges()[i].coupling);
        }
    }
}

TEST_CASE("rows relying on absent defaults are rejected") {
    CHECK_THROWS_AS((void)parse_grid("grid v1\n[nodes]\n1, 1.0\n"), GridParseError);
    CHECK_THROWS_AS((void)parse_grid("grid v1\n[nodes]\n1, 1.0, 1, 1\n2, -1.0, 1, 1\n"
                                     "[edges]\n1, 2\n"),
                    GridParseError);
}
