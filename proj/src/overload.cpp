#include "swingnet/overload.hpp"

#include <cmath>
#include <stdexcept>

namespace swingnet {

double edge_capacity(double coupling, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("line tolerance alpha must be > 0");
    return alpha * coupling;
}

double max_transient_flow(double flow_old, double flow_new) {
    return flow_old + 2.0 * (flow_new - flow_old);
}

double transition_flow_at(double t, const FlowTransition& trans, double damping) {
    if (t < 0.0) throw std::invalid_argument("transition_flow_at requires t >= 0");
    return trans.flow_new - trans.delta * std::cos(trans.nu * t) * std::exp(-damping * t);
}

std::vector<FlowTransition> detect_overloads(const GridTopology& g_old, const Equilibrium& eq_old,
                                             const GridTopology& g_new, const Equilibrium& eq_new,
                                             double alpha) {
    std::vector<FlowTransition> out;
    out.reserve(g_new.edges().size());
    for (const auto& e : g_new.edges()) {
        FlowTransition tr;
        tr.a = e.a;
        tr.b = e.b;

        double th_old_a = eq_old.phases[g_old.index_of(e.a)];
        double th_old_b = eq_old.phases[g_old.index_of(e.b)];
        double th_new_a = eq_new.phases[g_new.index_of(e.a)];
        double th_new_b = eq_new.phases[g_new.index_of(e.b)];

        tr.flow_old = e.coupling * std::sin(th_old_b - th_old_a);
        tr.flow_new = e.coupling * std::sin(th_new_b - th_new_a);
        tr.delta = tr.flow_new - tr.flow_old;
        tr.flow_max = max_transient_flow(tr.flow_old, tr.flow_new);
        tr.capacity = edge_capacity(e.coupling, alpha);
        tr.overloaded = std::abs(tr.flow_max) > tr.capacity;

        // local oscillation frequency of the linearized edge dynamics; the
        // overload verdict does not depend on it
        double beta_edge = e.coupling * std::cos(th_new_b - th_new_a);
        double mean_inertia = 0.5 * (g_new.node(e.a).inertia + g_new.node(e.b).inertia);
        tr.nu = std::sqrt(std::abs(beta_edge) / mean_inertia);

        out.push_back(tr);
    }
    return out;
}

}  // namespace swingnet
