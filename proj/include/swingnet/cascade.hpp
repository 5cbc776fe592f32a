#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swingnet/disturbance.hpp"
#include "swingnet/overload.hpp"
#include "swingnet/stability.hpp"

namespace swingnet {

/// Knobs of the attack-and-propagate loop that the algorithm leaves open.
struct CascadePolicy {
    double alpha = 0.5;                  // line tolerance (capacity = alpha * K)
    double disturbance_magnitude = 1e-3; // rad, recorded with each trace
    int max_rounds = 100;
    int paralysis_min_component = 2;     // a live island needs at least this many nodes
    std::string redistribution_rule = "proportional";
    std::uint64_t rng_seed = 0;
    SolverConfig solver;
};

struct ComponentSummary {
    std::vector<NodeId> members;
    double power_total = 0.0;
    bool live = false;  // has at least one generator and one load
};

enum class CascadeOutcome { Rebalanced, Paralyzed, NoEquilibrium, RoundLimit };

[[nodiscard]] std::string to_string(CascadeOutcome o);

struct CascadeRound {
    int round = 0;
    std::vector<std::pair<NodeId, NodeId>> removed_edges;  // overload failures (plus the
                                                           // attack edge in round 1)
    std::vector<NodeId> exceptional_nodes;        // failed via the pole criterion
    std::vector<NodeId> dead_component_nodes;     // failed via unbalanceable islands
    std::vector<NodeId> failed_nodes;             // union of the two, sorted
    bool equilibrium_found = false;
    StabilityVerdict stability_verdict = StabilityVerdict::MarginallyStable;
    std::vector<NodePoleReport> pole_reports;     // for unstable components
    std::vector<FlowTransition> transitions;
    std::vector<ComponentSummary> components;     // live islands after this round
};

struct CascadeTrace {
    std::pair<NodeId, NodeId> attack{0, 0};
    std::vector<CascadeRound> rounds;
    CascadeOutcome outcome = CascadeOutcome::Rebalanced;
    int fn = 0;  // total failed nodes
    int fe = 0;  // total failed edges beyond the attack itself
    std::map<NodeId, bool> j_column;       // per initial node: did it fail
    bool initial_stable = true;            // Lyapunov check before the attack
    bool initial_equilibrium_found = true;
    int initial_node_count = 0;
    int initial_edge_count = 0;
    std::vector<NodeId> surviving_nodes;   // sorted
};

struct RedistributionResult {
    GridTopology grid;                                     // live islands, rebalanced
    std::vector<NodeId> dead_nodes;                        // nodes of unbalanceable islands
    std::vector<std::pair<NodeId, NodeId>> removed_edges;  // incident + dead-island edges
    std::vector<ComponentSummary> components;              // live islands kept

    [[nodiscard]] bool unbalanceable() const { return grid.node_count() == 0; }
};

/// Remove the failed nodes, then rebalance every connected component of the
/// survivor grid: generation is scaled down proportionally on surplus, loads
/// on deficit. Islands that cannot balance (no generator/load pair) are
/// dropped and their nodes reported dead.
[[nodiscard]] RedistributionResult redistribute_power(const GridTopology& g,
                                                      const std::vector<NodeId>& failed);

/// True when no connected component can operate: a live island needs at least
/// min_component nodes including one generator and one load.
[[nodiscard]] bool paralysis_check(const GridTopology& g, int min_component = 2);

/// Attack one edge and propagate failures round by round: re-solve the
/// equilibrium, trip overloaded lines, classify stability, fail exceptional
/// nodes, redistribute, repeat until the grid rebalances or dies.
[[nodiscard]] CascadeTrace run_cascade(const GridTopology& g, NodeId attack_a, NodeId attack_b,
                                       const CascadePolicy& policy = {});

}  // namespace swingnet
