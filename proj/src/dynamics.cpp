#include "swingnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

namespace swingnet {

namespace {

Vector acceleration(const GridTopology& g, const Vector& theta, const Vector& omega) {
    Vector a = residual(g, theta);
    for (int i = 0; i < g.node_count(); ++i) {
        const auto& n = g.nodes()[i];
        a[i] = (a[i] - n.damping * omega[i]) / n.inertia;
    }
    return a;
}

}  // namespace

double kick_sign(std::uint64_t seed, NodeId node) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(node + 1)));
    return (rng() & 1u) ? 1.0 : -1.0;
}

KickState apply_disturbance(const GridTopology& g, const KickState& state,
                            const DisturbanceSpec& spec, std::uint64_t seed) {
    KickState out = state;
    for (NodeId tgt : spec.targets)
        if (!g.has_node(tgt)) throw GridError("disturbance targets missing node " + std::to_string(tgt));
    auto hit = [&](NodeId id) { return spec.all_nodes || spec.targets.count(id) > 0; };
    for (const auto& n : g.nodes()) {
        if (!hit(n.id)) continue;
        double delta = spec.magnitude * kick_sign(seed, n.id);
        int idx = g.index_of(n.id);
        if (spec.mode == KickMode::PhaseKick) out.phases[idx] += delta;
        else out.velocities[idx] += delta;
    }
    return out;
}

TrajectoryRecord integrate_swing(const GridTopology& g, const Vector& phases0,
                                 const Vector& velocities0, double dt, double horizon,
                                 const std::vector<DisturbanceSpec>& disturbances,
                                 std::uint64_t seed, const DivergenceBounds& bounds) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_swing requires dt > 0");
    if (horizon < dt) throw std::invalid_argument("integrate_swing requires horizon >= dt");
    const int n = g.node_count();
    if (phases0.size() != n || velocities0.size() != n)
        throw GridError("state dimension does not match the grid");

    const int steps = static_cast<int>(std::llround(horizon / dt));
    auto specs = disturbances;
    std::sort(specs.begin(), specs.end(),
              [](const DisturbanceSpec& a, const DisturbanceSpec& b) { return a.time < b.time; });
    for (const auto& s : specs) {
        if (!(s.magnitude > 0.0)) throw std::invalid_argument("disturbance magnitude must be > 0");
        for (NodeId t : s.targets)
            if (!g.has_node(t)) throw GridError("disturbance targets missing node " + std::to_string(t));
    }

    TrajectoryRecord rec;
    rec.dt = dt;
    rec.disturbances = specs;
    for (const auto& nd : g.nodes()) rec.node_ids.push_back(nd.id);
    rec.times.resize(steps + 1);
    rec.phases.resize(steps + 1, n);
    rec.velocities.resize(steps + 1, n);

    Vector theta = phases0, omega = velocities0;
    Vector baseline = phases0;
    std::vector<bool> frozen(n, false);
    std::size_t next_spec = 0;

    auto flag = [&](int i, double t) {
        NodeId id = rec.node_ids[i];
        if (!rec.diverged_nodes.count(id)) rec.diverged_nodes.emplace(id, t);
        frozen[i] = true;
        omega[i] = 0.0;
        if (!std::isfinite(theta[i])) theta[i] = baseline[i];
    };

    for (int k = 0; k <= steps; ++k) {
        double t = k * dt;
        rec.times[k] = t;

        // apply disturbances scheduled at or before this instant
        while (next_spec < specs.size() && specs[next_spec].time <= t + 0.5 * dt) {
            KickState ks{theta, omega};
            ks = apply_disturbance(g, ks, specs[next_spec], seed);
            theta = ks.phases;
            omega = ks.velocities;
            auto hit = [&](NodeId id) {
                return specs[next_spec].all_nodes || specs[next_spec].targets.count(id) > 0;
            };
            for (int i = 0; i < n; ++i)
                if (hit(rec.node_ids[i])) baseline[i] = theta[i];  // post-kick baseline
            ++next_spec;
        }

        // divergence check on the current state
        for (int i = 0; i < n; ++i) {
            if (frozen[i]) continue;
            if (!std::isfinite(theta[i]) || !std::isfinite(omega[i]) ||
                std::abs(theta[i] - baseline[i]) > bounds.divergence_bound ||
                std::abs(omega[i]) > bounds.velocity_bound) {
                flag(i, t);
            }
        }

        rec.phases.row(k) = theta.transpose();
        rec.velocities.row(k) = omega.transpose();
        if (k == steps) break;

        Vector k1t = omega, k1o = acceleration(g, theta, omega);
        Vector k2t = omega + 0.5 * dt * k1o;
        Vector k2o = acceleration(g, theta + 0.5 * dt * k1t, omega + 0.5 * dt * k1o);
        Vector k3t = omega + 0.5 * dt * k2o;
        Vector k3o = acceleration(g, theta + 0.5 * dt * k2t, omega + 0.5 * dt * k2o);
        Vector k4t = omega + dt * k3o;
        Vector k4o = acceleration(g, theta + dt * k3t, omega + dt * k3o);
        Vector dth = dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        Vector dom = dt / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
        for (int i = 0; i < n; ++i) {
            if (frozen[i]) continue;
            theta[i] += dth[i];
            omega[i] += dom[i];
        }
    }
    return rec;
}

double edge_flow(const GridTopology& g, const Vector& phases, NodeId a, NodeId b) {
    const GridEdge& e = g.edge(a, b);  // throws for a missing edge
    double f = e.coupling * std::sin(phases[g.index_of(b)] - phases[g.index_of(a)]);
    return f;
}

std::map<NodeId, double> detect_divergence(const TrajectoryRecord& traj, double divergence_bound,
                                           double velocity_bound) {
    std::map<NodeId, double> out;
    const int n = static_cast<int>(traj.node_ids.size());
    if (traj.times.empty()) return out;

    Vector baseline = traj.phases.row(0).transpose();
    std::size_t next_spec = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        double t = traj.times[k];
        while (next_spec < traj.disturbances.size() &&
               traj.disturbances[next_spec].time <= t + 0.5 * traj.dt) {
            const auto& spec = traj.disturbances[next_spec];
            for (int i = 0; i < n; ++i)
                if (spec.all_nodes || spec.targets.count(traj.node_ids[i]) > 0)
                    baseline[i] = traj.phases(k, i);
            ++next_spec;
        }
        for (int i = 0; i < n; ++i) {
            NodeId id = traj.node_ids[i];
            if (out.count(id)) continue;
            double th = traj.phases(k, i), om = traj.velocities(k, i);
            if (!std::isfinite(th) || !std::isfinite(om) ||
                std::abs(th - baseline[i]) > divergence_bound || std::abs(om) > velocity_bound) {
                out.emplace(id, t);
            }
        }
    }
    return out;
}

double total_energy(const GridTopology& g, const Vector& phases, const Vector& velocities) {
    double kinetic = 0.0;
    for (int i = 0; i < g.node_count(); ++i)
        kinetic += 0.5 * g.nodes()[i].inertia * velocities[i] * velocities[i];
    return kinetic + potential_energy(g, phases);
}

void write_trajectory(const TrajectoryRecord& traj, std::ostream& out, int stride) {
    if (stride < 1) stride = 1;
    out << "time";
    for (NodeId id : traj.node_ids) out << "\ttheta_" << id;
    for (NodeId id : traj.node_ids) out << "\tomega_" << id;
    out << "\n";
    out.precision(12);
    for (std::size_t k = 0; k < traj.times.size(); k += stride) {
        out << traj.times[k];
        for (int i = 0; i < traj.phases.cols(); ++i) out << "\t" << traj.phases(k, i);
        for (int i = 0; i < traj.velocities.cols(); ++i) out << "\t" << traj.velocities(k, i);
        out << "\n";
    }
}

}  // namespace swingnet
