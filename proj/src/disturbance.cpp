#include "swingnet/disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace swingnet {

std::string to_string(NodeVerdict v) {
    switch (v) {
        case NodeVerdict::Reliable: return "Reliable";
        case NodeVerdict::Marginal: return "Marginal";
        case NodeVerdict::Exceptional: return "Exceptional";
    }
    return "?";
}

double node_beta(const GridTopology& g, const Equilibrium& eq, NodeId i) {
    int ii = g.index_of(i);  // throws for a missing node
    double beta = 0.0;
    for (const auto& e : g.edges()) {
        if (!e.connects(i)) continue;
        int jj = g.index_of(e.other(i));
        beta += e.coupling * std::cos(eq.phases[jj] - eq.phases[ii]);
    }
    return beta;
}

std::pair<Complex, Complex> node_poles(double inertia, double damping, double beta) {
    if (!(inertia > 0.0)) throw std::invalid_argument("node_poles requires inertia > 0");
    double disc = damping * damping - 4.0 * inertia * beta;
    Complex sq = std::sqrt(Complex(disc, 0.0));
    Complex s1 = (-damping + sq) / (2.0 * inertia);
    Complex s2 = (-damping - sq) / (2.0 * inertia);
    return {s1, s2};
}

NodeVerdict classify_node(Complex s1, Complex s2, double zero_tol) {
    double max_re = std::max(s1.real(), s2.real());
    if (max_re > zero_tol) return NodeVerdict::Exceptional;
    if (max_re < -zero_tol) return NodeVerdict::Reliable;
    // repeated zero pole: the solution (C1 + C2 t) is unbounded
    if (std::abs(s1 - s2) <= zero_tol && std::abs(s1) <= zero_tol)
        return NodeVerdict::Exceptional;
    return NodeVerdict::Marginal;
}

std::vector<NodePoleReport> analyze_all_nodes(const GridTopology& g, const Equilibrium& eq,
                                              double zero_tol) {
    std::vector<NodePoleReport> out;
    out.reserve(g.nodes().size());
    std::vector<NodeId> ids;
    for (const auto& n : g.nodes()) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());
    for (NodeId id : ids) {
        const auto& n = g.node(id);
        NodePoleReport r;
        r.node = id;
        r.beta = node_beta(g, eq, id);
        std::tie(r.s1, r.s2) = node_poles(n.inertia, n.damping, r.beta);
        r.verdict = classify_node(r.s1, r.s2, zero_tol);
        out.push_back(r);
    }
    return out;
}

LinearResponse fit_linear_response(const NodePoleReport& report, double delta0, double ddelta0) {
    LinearResponse r;
    r.node = report.node;
    r.s1 = report.s1;
    r.s2 = report.s2;

    constexpr double kRepeatTol = 1e-12;
    if (std::abs(report.s1.imag()) > kRepeatTol) {
        // s = mu +- i nu: delta(t) = e^(mu t) (C1 cos(nu t) + C2 sin(nu t))
        r.kind = ResponseCase::ComplexPair;
        double mu = report.s1.real();
        double nu = std::abs(report.s1.imag());
        r.c1 = delta0;
        r.c2 = (ddelta0 - mu * delta0) / nu;
    } else if (std::abs(report.s1.real() - report.s2.real()) <= kRepeatTol) {
        // delta(t) = (C1 + C2 t) e^(s t)
        r.kind = ResponseCase::RepeatedReal;
        double s = report.s1.real();
        r.c1 = delta0;
        r.c2 = ddelta0 - s * delta0;
    } else {
        // delta(t) = C1 e^(s1 t) + C2 e^(s2 t)
        r.kind = ResponseCase::DistinctReal;
        double s1 = report.s1.real(), s2 = report.s2.real();
        r.c2 = (ddelta0 - s1 * delta0) / (s2 - s1);
        r.c1 = delta0 - r.c2;
    }
    return r;
}

double evaluate_linear_response(const LinearResponse& r, double t) {
    switch (r.kind) {
        case ResponseCase::ComplexPair: {
            double mu = r.s1.real();
            double nu = std::abs(r.s1.imag());
            return std::exp(mu * t) * (r.c1 * std::cos(nu * t) + r.c2 * std::sin(nu * t));
        }
        case ResponseCase::RepeatedReal:
            return (r.c1 + r.c2 * t) * std::exp(r.s1.real() * t);
        case ResponseCase::DistinctReal:
            return r.c1 * std::exp(r.s1.real() * t) + r.c2 * std::exp(r.s2.real() * t);
    }
    return 0.0;
}

double linear_response(const NodePoleReport& report, double delta0, double ddelta0, double t) {
    if (t < 0.0) throw std::invalid_argument("linear_response requires t >= 0");
    return evaluate_linear_response(fit_linear_response(report, delta0, ddelta0), t);
}

}  // namespace swingnet
