#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <set>

#include "swingnet/campaign.hpp"
#include "swingnet/grid_io.hpp"
#include "swingnet/stability.hpp"
#include "test_helpers.hpp"

using namespace swingnet;
using swingnet::testing::five_node_grid;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("ordered campaign over every edge of the five-node grid") {
    GridTopology g = five_node_grid();
    CampaignConfig cfg;
    cfg.attack_count = g.edge_count();
    CampaignResult res = run_campaign(g, cfg);
    CHECK(res.summary.attacks_run == 7);
    CHECK(res.summary.cascades_triggered <= 7);
    CHECK(res.summary.outcome_counts.count("Paralyzed"));

    // histogram mass equals the attack count; degree mass equals total FN
    int fn_mass = 0, fn_total = 0;
    for (const auto& [fn, count] : res.summary.fn_histogram) {
        fn_mass += count;
        fn_total += fn * count;
    }
    CHECK(fn_mass == 7);
    int degree_mass = 0;
    for (const auto& [deg, count] : res.summary.degree_histogram) degree_mass += count;
    CHECK(degree_mass == fn_total);
}

TEST_CASE("T = 0 is a config error, as is T beyond the edge count") {
    GridTopology g = five_node_grid();
    CampaignConfig cfg;
    cfg.attack_count = 0;
    CHECK_THROWS_AS((void)run_campaign(g, cfg), std::invalid_argument);
    cfg.attack_count = 8;
    CHECK_THROWS_AS((void)run_campaign(g, cfg), std::invalid_argument);
}

TEST_CASE("same config and seed write byte-identical outputs") {
    namespace fs = std::filesystem;
    GridTopology g = five_node_grid();
    fs::path dir1 = fs::temp_directory_path() / "swingnet_campaign_a";
    fs::path dir2 = fs::temp_directory_path() / "swingnet_campaign_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    CampaignConfig cfg;
    cfg.attack_count = g.edge_count();
    cfg.policy.rng_seed = 7;
    cfg.output_dir = dir1;
    (void)run_campaign(g, cfg);
    cfg.output_dir = dir2;
    cfg.parallelism = 2;  // parallelism degree must not change the bytes
    (void)run_campaign(g, cfg);

    for (const auto& entry : fs::directory_iterator(dir1)) {
        fs::path other = dir2 / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("random strategy is a permutation and is seed stable") {
    GridTopology g = five_node_grid();
    CampaignConfig cfg;
    cfg.strategy = AttackStrategy::RandomWithoutReplacement;
    cfg.attack_count = g.edge_count();
    cfg.policy.rng_seed = 11;
    CampaignResult a = run_campaign(g, cfg);
    CampaignResult b = run_campaign(g, cfg);
    REQUIRE(a.traces.size() == b.traces.size());
    std::set<std::pair<NodeId, NodeId>> attacks;
    for (std::size_t k = 0; k < a.traces.size(); ++k) {
        CHECK(a.traces[k].attack == b.traces[k].attack);
        attacks.insert(a.traces[k].attack);
    }
    CHECK(attacks.size() == a.traces.size());  // without replacement
}

TEST_CASE("degree_histogram counts each failure at its pre-attack degree") {
    GridTopology g = five_node_grid();
    CascadeTrace trace;
    for (const auto& n : g.nodes()) trace.j_column[n.id] = false;
    trace.j_column[2] = true;  // node 2 has degree 3 in the intact grid
    trace.fn = 1;
    auto hist = degree_histogram({trace}, g);
    REQUIRE(hist.size() == 1);
    CHECK(hist.at(3) == 1);

    CHECK(degree_histogram({}, g).empty());
}

TEST_CASE("export_plot_data writes contiguous bins and rerun is identical") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "swingnet_plots";
    fs::remove_all(dir);
    CampaignSummary s;
    s.fn_histogram = {{0, 3}, {2, 1}};
    s.fe_histogram = {{0, 4}};
    s.degree_histogram = {{1, 2}};
    s.outcome_counts = {{"Rebalanced", 4}};
    export_plot_data(s, dir);
    std::string first = slurp(dir / "fn_hist.tsv");
    // header + bins 0, 1, 2
    CHECK(first == "fn\tcount\n0\t3\n1\t0\n2\t1\n");
    export_plot_data(s, dir);
    CHECK(slurp(dir / "fn_hist.tsv") == first);

    CampaignSummary empty;
    export_plot_data(empty, dir);
    CHECK(slurp(dir / "fn_hist.tsv") == "fn\tcount\n");  // headers only
    fs::remove_all(dir);
}

TEST_CASE("the bundled vulnerable grid loads and is initially stable") {
    GridTopology g = load_grid(std::string(SWINGNET_DATA_DIR) + "/vulnerable31.grid");
    CHECK(g.node_count() == 31);
    CHECK(g.edge_count() == 38);
    Equilibrium eq = solve_equilibrium(g);
    REQUIRE(eq.converged);
    CHECK(classify_stability(hessian(g, eq)).verdict == StabilityVerdict::AsymptoticallyStable);
}
