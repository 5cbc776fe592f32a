#include "swingnet/trace_io.hpp"

#include <fstream>

namespace swingnet {

using nlohmann::json;

json to_json(const SolverConfig& cfg) {
    return json{{"eps1", cfg.eps1},
                {"eps2", cfg.eps2},
                {"eps_lambda", cfg.eps_lambda},
                {"max_iterations", cfg.max_iterations},
                {"jitter_scale", cfg.jitter_scale},
                {"rng_seed", cfg.rng_seed}};
}

json to_json(const CascadePolicy& policy) {
    return json{{"alpha", policy.alpha},
                {"disturbance_magnitude", policy.disturbance_magnitude},
                {"max_rounds", policy.max_rounds},
                {"paralysis_min_component", policy.paralysis_min_component},
                {"redistribution_rule", policy.redistribution_rule},
                {"rng_seed", policy.rng_seed},
                {"solver", to_json(policy.solver)}};
}

json to_json(const NodePoleReport& report) {
    return json{{"node", report.node},
                {"beta", report.beta},
                {"s1", {report.s1.real(), report.s1.imag()}},
                {"s2", {report.s2.real(), report.s2.imag()}},
                {"verdict", to_string(report.verdict)}};
}

json to_json(const StabilityReport& report) {
    json eig = json::array();
    for (int i = 0; i < report.eigen_real_parts.size(); ++i)
        eig.push_back(report.eigen_real_parts[i]);
    return json{{"eigen_real_parts", eig},
                {"structural_zero_index", report.structural_zero_index},
                {"lambda2", report.lambda2},
                {"verdict", to_string(report.verdict)}};
}

json to_json(const FlowTransition& tr) {
    return json{{"edge", {tr.a, tr.b}},
                {"flow_old", tr.flow_old},
                {"flow_new", tr.flow_new},
                {"delta", tr.delta},
                {"flow_max", tr.flow_max},
                {"capacity", tr.capacity},
                {"overloaded", tr.overloaded},
                {"nu", tr.nu}};
}

json to_json(const CascadeRound& round) {
    json removed = json::array();
    for (const auto& [a, b] : round.removed_edges) removed.push_back({a, b});
    json poles = json::array();
    for (const auto& r : round.pole_reports) poles.push_back(to_json(r));
    json transitions = json::array();
    for (const auto& tr : round.transitions) transitions.push_back(to_json(tr));
    json comps = json::array();
    for (const auto& c : round.components)
        comps.push_back(json{{"members", c.members}, {"power_total", c.power_total}});
    return json{{"round", round.round},
                {"removed_edges", removed},
                {"failed_nodes", round.failed_nodes},
                {"exceptional_nodes", round.exceptional_nodes},
                {"dead_component_nodes", round.dead_component_nodes},
                {"equilibrium_found", round.equilibrium_found},
                // verdicts are meaningless for rounds whose solve failed
                {"stability_verdict",
                 round.equilibrium_found ? json(to_string(round.stability_verdict)) : json()},
                {"pole_reports", poles},
                {"flow_transitions", transitions},
                {"components", comps}};
}

json to_json(const CascadeTrace& trace, const CascadePolicy& policy) {
    json rounds = json::array();
    for (const auto& r : trace.rounds) rounds.push_back(to_json(r));
    json jcol = json::object();
    for (const auto& [id, failed] : trace.j_column) jcol[std::to_string(id)] = failed;
    return json{{"format", "swingnet-trace v1"},
                {"grid", {{"nodes", trace.initial_node_count}, {"edges", trace.initial_edge_count}}},
                {"attack", {trace.attack.first, trace.attack.second}},
                {"outcome", to_string(trace.outcome)},
                {"fn", trace.fn},
                {"fe", trace.fe},
                {"initial_stable", trace.initial_stable},
                {"initial_equilibrium_found", trace.initial_equilibrium_found},
                {"rounds", rounds},
                {"j_column", jcol},
                {"surviving_nodes", trace.surviving_nodes},
                {"policy", to_json(policy)}};
}

void write_trace(const CascadeTrace& trace, const CascadePolicy& policy,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw GridError("cannot write trace file " + path.string());
    out << to_json(trace, policy).dump(2) << "\n";
}

}  // namespace swingnet
