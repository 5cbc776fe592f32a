#include "swingnet/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace swingnet {

std::string to_string(CascadeOutcome o) {
    switch (o) {
        case CascadeOutcome::Rebalanced: return "Rebalanced";
        case CascadeOutcome::Paralyzed: return "Paralyzed";
        case CascadeOutcome::NoEquilibrium: return "NoEquilibrium";
        case CascadeOutcome::RoundLimit: return "RoundLimit";
    }
    return "?";
}

namespace {

bool component_live(const GridTopology& g, const std::vector<NodeId>& members, int min_component) {
    if (static_cast<int>(members.size()) < min_component) return false;
    bool gen = false, load = false;
    for (NodeId id : members) {
        double p = g.node(id).power;
        gen = gen || p > 0.0;
        load = load || p < 0.0;
    }
    return gen && load;
}

GridTopology subgrid(const GridTopology& g, const std::vector<NodeId>& members) {
    std::set<NodeId> keep(members.begin(), members.end());
    std::vector<GridNode> nodes;
    std::vector<GridEdge> edges;
    for (const auto& n : g.nodes())
        if (keep.count(n.id)) nodes.push_back(n);
    for (const auto& e : g.edges())
        if (keep.count(e.a) && keep.count(e.b)) edges.push_back(e);
    return GridTopology(std::move(nodes), std::move(edges));
}

}  // namespace

RedistributionResult redistribute_power(const GridTopology& g, const std::vector<NodeId>& failed) {
    for (NodeId id : failed)
        if (!g.has_node(id)) throw GridError("failed node " + std::to_string(id) + " not in grid");

    RedistributionResult res;
    std::set<NodeId> gone(failed.begin(), failed.end());

    std::vector<GridNode> nodes;
    for (const auto& n : g.nodes())
        if (!gone.count(n.id)) nodes.push_back(n);
    std::vector<GridEdge> edges;
    for (const auto& e : g.edges()) {
        if (gone.count(e.a) || gone.count(e.b)) res.removed_edges.emplace_back(e.a, e.b);
        else edges.push_back(e);
    }
    GridTopology survivor(std::move(nodes), std::move(edges));

    std::set<NodeId> dead;
    for (const auto& comp : connected_components(survivor)) {
        if (component_live(survivor, comp, 2)) continue;
        for (NodeId id : comp) dead.insert(id);
    }
    res.dead_nodes.assign(dead.begin(), dead.end());

    std::vector<GridNode> live_nodes;
    for (const auto& n : survivor.nodes())
        if (!dead.count(n.id)) live_nodes.push_back(n);
    std::vector<GridEdge> live_edges;
    for (const auto& e : survivor.edges()) {
        if (dead.count(e.a) || dead.count(e.b)) res.removed_edges.emplace_back(e.a, e.b);
        else live_edges.push_back(e);
    }
    GridTopology live(std::move(live_nodes), std::move(live_edges));

    // proportional rebalance within each live island
    std::vector<GridNode> balanced = live.nodes();
    for (const auto& comp : connected_components(live)) {
        double gen = 0.0, load = 0.0;
        for (NodeId id : comp) {
            double p = live.node(id).power;
            if (p > 0.0) gen += p;
            else load -= p;
        }
        double total = gen - load;
        res.components.push_back({comp, total, true});
        if (std::abs(total) < kPowerBalanceTol) continue;  // keep powers bit-exact

        double scale_gen = total > 0.0 ? load / gen : 1.0;
        double scale_load = total < 0.0 ? gen / load : 1.0;
        std::set<NodeId> in_comp(comp.begin(), comp.end());
        for (auto& n : balanced) {
            if (!in_comp.count(n.id)) continue;
            if (n.power > 0.0) n.power *= scale_gen;
            else if (n.power < 0.0) n.power *= scale_load;
        }
    }

    res.grid = GridTopology(std::move(balanced), live.edges());
    return res;
}

bool paralysis_check(const GridTopology& g, int min_component) {
    for (const auto& comp : connected_components(g))
        if (component_live(g, comp, min_component)) return false;
    return true;
}

CascadeTrace run_cascade(const GridTopology& g, NodeId attack_a, NodeId attack_b,
                         const CascadePolicy& policy) {
    CascadeTrace trace;
    trace.attack = {std::min(attack_a, attack_b), std::max(attack_a, attack_b)};
    trace.initial_node_count = g.node_count();
    trace.initial_edge_count = g.edge_count();
    for (const auto& n : g.nodes()) trace.j_column[n.id] = false;

    SolverConfig solver = policy.solver;
    solver.rng_seed = policy.rng_seed;

    auto fail_nodes = [&](const std::vector<NodeId>& ids) {
        for (NodeId id : ids) trace.j_column[id] = true;
        trace.fn += static_cast<int>(ids.size());
    };

    // pre-attack state; an unstable start is reported, not fatal
    Equilibrium eq_prev = solve_equilibrium(g, solver);
    trace.initial_equilibrium_found = eq_prev.converged;
    if (eq_prev.converged) {
        auto rep = classify_stability(hessian(g, eq_prev));
        trace.initial_stable = rep.verdict == StabilityVerdict::AsymptoticallyStable;
    } else {
        trace.initial_stable = false;
    }
    GridTopology grid_prev = g;  // the grid eq_prev belongs to
    bool have_reference = eq_prev.converged;

    // attack, then settle any islands it created; those failures belong to round 1
    RedistributionResult settled = redistribute_power(remove_edge(g, attack_a, attack_b), {});
    GridTopology grid = settled.grid;
    std::vector<NodeId> carried_dead = settled.dead_nodes;
    int carried_edge_removals = static_cast<int>(settled.removed_edges.size());

    // the round record always reports the live islands as of its end
    auto push_round = [&](CascadeRound&& rec) {
        rec.failed_nodes = rec.dead_component_nodes;
        rec.failed_nodes.insert(rec.failed_nodes.end(), rec.exceptional_nodes.begin(),
                                rec.exceptional_nodes.end());
        std::sort(rec.failed_nodes.begin(), rec.failed_nodes.end());
        rec.components.clear();
        for (const auto& comp : connected_components(grid)) {
            double total = 0.0;
            for (NodeId id : comp) total += grid.node(id).power;
            rec.components.push_back(
                {comp, total, component_live(grid, comp, policy.paralysis_min_component)});
        }
        trace.rounds.push_back(std::move(rec));
    };

    bool terminated = false;
    for (int round = 1; round <= policy.max_rounds && !terminated; ++round) {
        CascadeRound rec;
        rec.round = round;
        if (round == 1) rec.removed_edges.push_back(trace.attack);
        rec.dead_component_nodes = carried_dead;
        fail_nodes(carried_dead);
        trace.fe += carried_edge_removals;
        carried_dead.clear();
        carried_edge_removals = 0;

        if (paralysis_check(grid, policy.paralysis_min_component)) {
            trace.outcome = CascadeOutcome::Paralyzed;
            push_round(std::move(rec));
            break;
        }

        Equilibrium eq = solve_equilibrium(grid, solver);
        rec.equilibrium_found = eq.converged;
        if (!eq.converged) {
            trace.outcome = CascadeOutcome::NoEquilibrium;
            push_round(std::move(rec));
            break;
        }

        // overload failures during the flow transition from the previous state;
        // without a solved reference state there is no transition to evaluate
        bool any_overload = false;
        if (have_reference) {
            rec.transitions = detect_overloads(grid_prev, eq_prev, grid, eq, policy.alpha);
            GridTopology tripped = grid;
            for (const auto& tr : rec.transitions) {
                if (!tr.overloaded) continue;
                any_overload = true;
                rec.removed_edges.emplace_back(tr.a, tr.b);
                tripped = remove_edge(tripped, tr.a, tr.b);
                trace.fe += 1;
            }
            if (any_overload) {
                RedistributionResult after = redistribute_power(tripped, {});
                rec.dead_component_nodes.insert(rec.dead_component_nodes.end(),
                                                after.dead_nodes.begin(), after.dead_nodes.end());
                fail_nodes(after.dead_nodes);
                trace.fe += static_cast<int>(after.removed_edges.size());
                grid_prev = grid;
                eq_prev = eq;
                grid = after.grid;
                if (paralysis_check(grid, policy.paralysis_min_component)) {
                    trace.outcome = CascadeOutcome::Paralyzed;
                    push_round(std::move(rec));
                    break;
                }
                eq = solve_equilibrium(grid, solver);
                rec.equilibrium_found = eq.converged;
                if (!eq.converged) {
                    trace.outcome = CascadeOutcome::NoEquilibrium;
                    push_round(std::move(rec));
                    break;
                }
            }
        }

        // per-island stability; exceptional nodes come from unstable islands
        StabilityVerdict worst = StabilityVerdict::AsymptoticallyStable;
        std::vector<NodeId> exceptional;
        for (const auto& comp : connected_components(grid)) {
            GridTopology sub = subgrid(grid, comp);
            Equilibrium sub_eq;
            sub_eq.converged = true;
            sub_eq.phases.resize(sub.node_count());
            for (NodeId id : comp) sub_eq.phases[sub.index_of(id)] = eq.phases[grid.index_of(id)];

            auto rep = classify_stability(hessian(sub, sub_eq));
            if (rep.verdict == StabilityVerdict::Unstable) {
                worst = StabilityVerdict::Unstable;
                for (const auto& r : analyze_all_nodes(sub, sub_eq)) {
                    rec.pole_reports.push_back(r);
                    if (r.verdict == NodeVerdict::Exceptional) exceptional.push_back(r.node);
                }
            } else if (rep.verdict == StabilityVerdict::MarginallyStable &&
                       worst == StabilityVerdict::AsymptoticallyStable) {
                worst = StabilityVerdict::MarginallyStable;
            }
        }
        rec.stability_verdict = worst;
        rec.exceptional_nodes = exceptional;

        if (exceptional.empty()) {
            if (!any_overload) {
                // nothing was removed this round, so no further round can differ
                trace.outcome = worst == StabilityVerdict::Unstable ? CascadeOutcome::RoundLimit
                                                                    : CascadeOutcome::Rebalanced;
                push_round(std::move(rec));
                break;
            }
            grid_prev = grid;
            eq_prev = eq;
        } else {
            fail_nodes(exceptional);
            grid_prev = grid;
            eq_prev = eq;
            RedistributionResult after = redistribute_power(grid, exceptional);
            rec.dead_component_nodes.insert(rec.dead_component_nodes.end(),
                                            after.dead_nodes.begin(), after.dead_nodes.end());
            fail_nodes(after.dead_nodes);
            trace.fe += static_cast<int>(after.removed_edges.size());
            grid = after.grid;
            if (paralysis_check(grid, policy.paralysis_min_component)) {
                trace.outcome = CascadeOutcome::Paralyzed;
                push_round(std::move(rec));
                break;
            }
        }
        have_reference = true;

        if (round == policy.max_rounds) {
            trace.outcome = CascadeOutcome::RoundLimit;
            terminated = true;
        }
        push_round(std::move(rec));
    }

    for (const auto& n : g.nodes())
        if (!trace.j_column[n.id]) trace.surviving_nodes.push_back(n.id);
    std::sort(trace.surviving_nodes.begin(), trace.surviving_nodes.end());
    return trace;
}

}  // namespace swingnet
