#pragma once

#include <vector>

#include "swingnet/equilibrium.hpp"

namespace swingnet {

/// Damped-sinusoid flow transition of one line after a topology change.
/// The line is overloaded when the first-swing peak |flow_max| exceeds the
/// capacity alpha * K. Flows are signed; comparisons use absolute values.
struct FlowTransition {
    NodeId a = 0;
    NodeId b = 0;
    double flow_old = 0.0;
    double flow_new = 0.0;
    double delta = 0.0;      // flow_new - flow_old
    double flow_max = 0.0;   // flow_old + 2 * delta
    double capacity = 0.0;
    bool overloaded = false;
    double nu = 0.0;         // oscillation frequency for curve evaluation only
};

/// Line capacity alpha * K. Throws for alpha <= 0; alpha >= 1 is accepted
/// (used to suppress overload failures in experiments).
[[nodiscard]] double edge_capacity(double coupling, double alpha);

/// First-swing peak estimate flow_old + 2 (flow_new - flow_old).
[[nodiscard]] double max_transient_flow(double flow_old, double flow_new);

/// Damped-cosine transition curve F_new - delta cos(nu t) e^(-D t).
[[nodiscard]] double transition_flow_at(double t, const FlowTransition& trans, double damping);

/// One transition per edge of g_new (attack removals make g_new's edges a
/// subset of g_old's). flow_old is evaluated at eq_old on g_old, flow_new at
/// eq_new on g_new; rows are ordered by (a, b).
[[nodiscard]] std::vector<FlowTransition> detect_overloads(const GridTopology& g_old,
                                                           const Equilibrium& eq_old,
                                                           const GridTopology& g_new,
                                                           const Equilibrium& eq_new, double alpha);

}  // namespace swingnet
