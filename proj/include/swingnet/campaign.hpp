#pragma once

#include <filesystem>
#include <map>

#include "swingnet/cascade.hpp"

namespace swingnet {

enum class AttackStrategy { Ordered, RandomWithoutReplacement };

struct CampaignConfig {
    AttackStrategy strategy = AttackStrategy::Ordered;
    int attack_count = 0;  // T; 1 <= T <= edge count
    CascadePolicy policy;
    std::filesystem::path output_dir;  // when set, one trace file per attack + summary
    int parallelism = 1;
};

struct CampaignSummary {
    int attacks_run = 0;
    int cascades_triggered = 0;              // attacks with FN > 0
    std::map<int, int> fn_histogram;         // FN -> number of attacks
    std::map<int, int> fe_histogram;
    std::map<int, int> degree_histogram;     // pre-attack degree -> failure count
    std::map<std::string, int> outcome_counts;
    double mean_failed_fraction = 0.0;       // mean FN / N over attacks
};

struct CampaignResult {
    CampaignSummary summary;
    std::vector<CascadeTrace> traces;  // ordered by attack ordinal
};

/// Run T independent single-edge attacks, each starting from the pristine
/// grid. Attacks fan out to a bounded worker pool; the summary is reduced in
/// attack order, so results do not depend on the parallelism degree.
[[nodiscard]] CampaignResult run_campaign(const GridTopology& g, const CampaignConfig& cfg);

/// Bin failed nodes of the traces by their degree in the pre-attack grid;
/// a node failing in k traces counts k times.
[[nodiscard]] std::map<int, int> degree_histogram(const std::vector<CascadeTrace>& traces,
                                                  const GridTopology& g);

/// Columnar text files (fn_hist.tsv, fe_hist.tsv, degree_hist.tsv,
/// outcomes.tsv) with contiguous bins; column order is documented in the
/// header row of each file.
void export_plot_data(const CampaignSummary& summary, const std::filesystem::path& dir);

}  // namespace swingnet
