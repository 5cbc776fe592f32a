#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <vector>

#include "swingnet/equilibrium.hpp"

namespace swingnet {

enum class KickMode { PhaseKick, VelocityKick };

/// Impulsive disturbance applied at one instant. Each target gets the given
/// magnitude with a per-node random sign drawn from the seeded generator.
/// An empty target set with all_nodes false is a no-op.
struct DisturbanceSpec {
    std::set<NodeId> targets;
    bool all_nodes = false;
    double magnitude = 1e-3;    // radians (PhaseKick) or rad/s (VelocityKick)
    KickMode mode = KickMode::PhaseKick;
    double time = 0.0;          // seconds from trajectory start
};

/// Divergence thresholds. A node is flagged when its phase leaves the
/// post-kick baseline by more than divergence_bound (a pole slip) or its
/// velocity exceeds velocity_bound; non-finite state also flags.
struct DivergenceBounds {
    double divergence_bound = 3.14159265358979323846;  // rad from baseline
    double velocity_bound = 50.0;                      // rad/s
};

struct TrajectoryRecord {
    std::vector<double> times;   // uniform step dt, starting at 0
    Matrix phases;               // times.size() x node_count
    Matrix velocities;           // same shape
    std::map<NodeId, double> diverged_nodes;  // node -> first divergence time
    std::vector<NodeId> node_ids;             // column order
    std::vector<DisturbanceSpec> disturbances;  // as applied (baseline resets)
    double dt = 0.0;
};

/// Fixed-step classical Runge-Kutta integration of the swing equation in
/// first-order form. Disturbances are applied impulsively at their scheduled
/// steps. A node that crosses a divergence bound is flagged and frozen at its
/// last state so the rest of the network stays finite.
[[nodiscard]] TrajectoryRecord integrate_swing(const GridTopology& g, const Vector& phases0,
                                               const Vector& velocities0, double dt,
                                               double horizon,
                                               const std::vector<DisturbanceSpec>& disturbances = {},
                                               std::uint64_t seed = 0,
                                               const DivergenceBounds& bounds = {});

/// Instantaneous line flow K_ab sin(theta_b - theta_a); antisymmetric in (a, b).
[[nodiscard]] double edge_flow(const GridTopology& g, const Vector& phases, NodeId a, NodeId b);

struct KickState {
    Vector phases;
    Vector velocities;
};

/// Apply one disturbance to a state. The sign of each target's kick is a
/// deterministic function of (seed, node id), so results do not depend on
/// target iteration order.
[[nodiscard]] KickState apply_disturbance(const GridTopology& g, const KickState& state,
                                          const DisturbanceSpec& spec, std::uint64_t seed);

/// Sign the kick on `node` would get under `seed` (+1 or -1).
[[nodiscard]] double kick_sign(std::uint64_t seed, NodeId node);

/// Re-scan a trajectory for bound crossings. Baselines start at the first
/// recorded phases and reset for each target at its recorded kick times.
[[nodiscard]] std::map<NodeId, double> detect_divergence(const TrajectoryRecord& traj,
                                                         double divergence_bound,
                                                         double velocity_bound);

/// Kinetic plus potential energy of a state; conserved when all damping is zero.
[[nodiscard]] double total_energy(const GridTopology& g, const Vector& phases,
                                  const Vector& velocities);

/// Columnar text export: time, theta per node, omega per node.
void write_trajectory(const TrajectoryRecord& traj, std::ostream& out, int stride = 1);

}  // namespace swingnet
