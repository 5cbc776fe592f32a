#pragma once

#include <complex>
#include <string>
#include <vector>

#include "swingnet/equilibrium.hpp"

namespace swingnet {

using Complex = std::complex<double>;

enum class NodeVerdict { Reliable, Marginal, Exceptional };

[[nodiscard]] std::string to_string(NodeVerdict v);

inline constexpr double kPoleZeroTol = 1e-9;

/// Small-disturbance linearization of one node: effective stiffness beta and
/// the poles of M s^2 + D s + beta = 0.
struct NodePoleReport {
    NodeId node = 0;
    double beta = 0.0;
    Complex s1;   // root with the + branch of the square root
    Complex s2;
    NodeVerdict verdict = NodeVerdict::Reliable;
};

enum class ResponseCase { RepeatedReal, DistinctReal, ComplexPair };

/// Closed-form homogeneous solution of the node's linearized dynamics,
/// with coefficients fitted to the initial value and initial derivative.
struct LinearResponse {
    NodeId node = 0;
    ResponseCase kind = ResponseCase::DistinctReal;
    double c1 = 0.0;
    double c2 = 0.0;
    Complex s1;
    Complex s2;
};

/// beta_i = sum over neighbors j of K_ij cos(theta_j - theta_i); equals the
/// (i, i) entry of the Hesse matrix.
[[nodiscard]] double node_beta(const GridTopology& g, const Equilibrium& eq, NodeId i);

/// Roots of M s^2 + D s + beta = 0; complex pair when the discriminant is negative.
[[nodiscard]] std::pair<Complex, Complex> node_poles(double inertia, double damping, double beta);

/// Exceptional if either pole has real part above zero_tol; a repeated zero
/// pole is also exceptional because the trajectory grows linearly.
[[nodiscard]] NodeVerdict classify_node(Complex s1, Complex s2, double zero_tol = kPoleZeroTol);

/// One report per node, ordered by node id.
[[nodiscard]] std::vector<NodePoleReport> analyze_all_nodes(const GridTopology& g,
                                                            const Equilibrium& eq,
                                                            double zero_tol = kPoleZeroTol);

[[nodiscard]] LinearResponse fit_linear_response(const NodePoleReport& report, double delta0,
                                                 double ddelta0);

[[nodiscard]] double evaluate_linear_response(const LinearResponse& r, double t);

/// Convenience: fit to (delta0, ddelta0) and evaluate at t.
[[nodiscard]] double linear_response(const NodePoleReport& report, double delta0, double ddelta0,
                                     double t);

}  // namespace swingnet
