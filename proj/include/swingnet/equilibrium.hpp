#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "swingnet/grid.hpp"

namespace swingnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct SolverConfig {
    double eps1 = 1e-10;        // step-size tolerance
    double eps2 = 1e-8;         // residual tolerance (Euclidean norm)
    double eps_lambda = std::pow(2.0, -32);  // smallest downhill factor
    int max_iterations = 200;
    double jitter_scale = 0.01;  // stall-escape perturbation magnitude
    std::uint64_t rng_seed = 0;
};

struct Equilibrium {
    Vector phases;             // radians, indexed like g.nodes(); zero mean per component
    double residual_norm = 0;  // Euclidean norm of the steady-state residual
    int iterations = 0;
    bool converged = false;
    std::string diagnostic;    // non-empty when converged is false
};

/// Steady-state residual: component i is P_i + sum_j K_ij sin(theta_j - theta_i).
[[nodiscard]] Vector residual(const GridTopology& g, const Vector& phases);

/// Derivative of the residual. Off-diagonal (i,j) = K_ij cos(theta_j - theta_i)
/// for linked pairs; diagonal makes every row sum to zero.
[[nodiscard]] Matrix jacobian(const GridTopology& g, const Vector& phases);

/// Potential whose gradient is minus the residual:
/// V = -sum_i P_i theta_i - 1/2 sum_ij K_ij cos(theta_i - theta_j).
[[nodiscard]] double potential_energy(const GridTopology& g, const Vector& phases);

/// Damped (downhill) Newton solve of the steady-state equations. Works per
/// connected component with one phase pinned during the solve; the returned
/// phases are re-centered to zero mean within each component. Non-convergence
/// is reported through Equilibrium::converged, never thrown.
[[nodiscard]] Equilibrium solve_equilibrium(const GridTopology& g, const Vector& initial,
                                            const SolverConfig& cfg = {});

/// Same, starting from all phases zero.
[[nodiscard]] Equilibrium solve_equilibrium(const GridTopology& g, const SolverConfig& cfg = {});

}  // namespace swingnet
