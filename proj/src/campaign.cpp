#include "swingnet/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "swingnet/trace_io.hpp"

namespace swingnet {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t ordinal) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (ordinal + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CampaignResult run_campaign(const GridTopology& g, const CampaignConfig& cfg) {
    const int edge_count = g.edge_count();
    if (cfg.attack_count < 1)
        throw std::invalid_argument("campaign needs at least one attack (T >= 1)");
    if (cfg.attack_count > edge_count)
        throw std::invalid_argument("attack count T = " + std::to_string(cfg.attack_count) +
                                    " exceeds the edge count " + std::to_string(edge_count));

    std::vector<int> order(edge_count);
    std::iota(order.begin(), order.end(), 0);
    if (cfg.strategy == AttackStrategy::RandomWithoutReplacement) {
        std::mt19937_64 rng(cfg.policy.rng_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    order.resize(cfg.attack_count);

    CampaignResult result;
    result.traces.resize(cfg.attack_count);

    const int jobs = std::max(1, cfg.parallelism);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= cfg.attack_count) break;
            const GridEdge& e = g.edges()[order[k]];
            CascadePolicy policy = cfg.policy;
            policy.rng_seed = mix_seed(cfg.policy.rng_seed, static_cast<std::uint64_t>(k));
            result.traces[k] = run_cascade(g, e.a, e.b, policy);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    CampaignSummary& s = result.summary;
    s.attacks_run = cfg.attack_count;
    double frac_sum = 0.0;
    for (const auto& tr : result.traces) {
        if (tr.fn > 0) s.cascades_triggered += 1;
        s.fn_histogram[tr.fn] += 1;
        s.fe_histogram[tr.fe] += 1;
        s.outcome_counts[to_string(tr.outcome)] += 1;
        frac_sum += static_cast<double>(tr.fn) / g.node_count();
    }
    s.mean_failed_fraction = frac_sum / cfg.attack_count;
    s.degree_histogram = degree_histogram(result.traces, g);

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        for (int k = 0; k < cfg.attack_count; ++k) {
            std::ostringstream name;
            name << "trace_" << std::setw(4) << std::setfill('0') << k << ".json";
            CascadePolicy policy = cfg.policy;
            policy.rng_seed = mix_seed(cfg.policy.rng_seed, static_cast<std::uint64_t>(k));
            write_trace(result.traces[k], policy, cfg.output_dir / name.str());
        }
        nlohmann::json doc{{"format", "swingnet-campaign v1"},
                           {"strategy", cfg.strategy == AttackStrategy::Ordered
                                            ? "ordered"
                                            : "random-without-replacement"},
                           {"attacks_run", s.attacks_run},
                           {"cascades_triggered", s.cascades_triggered},
                           {"mean_failed_fraction", s.mean_failed_fraction},
                           {"outcome_counts", s.outcome_counts},
                           {"policy", to_json(cfg.policy)}};
        nlohmann::json fn = nlohmann::json::object(), fe = nlohmann::json::object(),
                       dh = nlohmann::json::object();
        for (const auto& [k, v] : s.fn_histogram) fn[std::to_string(k)] = v;
        for (const auto& [k, v] : s.fe_histogram) fe[std::to_string(k)] = v;
        for (const auto& [k, v] : s.degree_histogram) dh[std::to_string(k)] = v;
        doc["fn_histogram"] = fn;
        doc["fe_histogram"] = fe;
        doc["degree_histogram"] = dh;
        std::ofstream out(cfg.output_dir / "summary.json");
        if (!out) throw GridError("cannot write campaign summary in " + cfg.output_dir.string());
        out << doc.dump(2) << "\n";
        export_plot_data(s, cfg.output_dir);
    }
    return result;
}

std::map<int, int> degree_histogram(const std::vector<CascadeTrace>& traces,
                                    const GridTopology& g) {
    std::map<int, int> hist;
    for (const auto& tr : traces) {
        for (const auto& [id, failed] : tr.j_column) {
            if (!failed) continue;
            hist[g.degree(id)] += 1;
        }
    }
    return hist;
}

namespace {

void write_histogram(const std::filesystem::path& path, const std::string& key_name,
                     const std::map<int, int>& hist) {
    std::ofstream out(path);
    if (!out) throw GridError("cannot write plot data file " + path.string());
    out << key_name << "\tcount\n";
    if (hist.empty()) return;
    int max_key = hist.rbegin()->first;
    for (int k = 0; k <= max_key; ++k) {
        auto it = hist.find(k);
        out << k << "\t" << (it == hist.end() ? 0 : it->second) << "\n";
    }
}

}  // namespace

void export_plot_data(const CampaignSummary& summary, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_histogram(dir / "fn_hist.tsv", "fn", summary.fn_histogram);
    write_histogram(dir / "fe_hist.tsv", "fe", summary.fe_histogram);
    write_histogram(dir / "degree_hist.tsv", "degree", summary.degree_histogram);
    std::ofstream out(dir / "outcomes.tsv");
    if (!out) throw GridError("cannot write plot data file " + (dir / "outcomes.tsv").string());
    out << "outcome\tcount\n";
    for (const auto& [name, count] : summary.outcome_counts) out << name << "\t" << count << "\n";
}

}  // namespace swingnet
