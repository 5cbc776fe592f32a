#include "swingnet/equilibrium.hpp"

#include <cmath>
#include <random>

namespace swingnet {

namespace {

void check_dimension(const GridTopology& g, const Vector& phases) {
    if (phases.size() != g.node_count())
        throw GridError("phase vector has dimension " + std::to_string(phases.size()) +
                        ", grid has " + std::to_string(g.node_count()) + " nodes");
}

}  // namespace

Vector residual(const GridTopology& g, const Vector& phases) {
    check_dimension(g, phases);
    Vector r(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) r[i] = g.nodes()[i].power;
    for (const auto& e : g.edges()) {
        int ia = g.index_of(e.a), ib = g.index_of(e.b);
        double s = e.coupling * std::sin(phases[ib] - phases[ia]);
        r[ia] += s;
        r[ib] -= s;
    }
    return r;
}

Matrix jacobian(const GridTopology& g, const Vector& phases) {
    check_dimension(g, phases);
    int n = g.node_count();
    Matrix J = Matrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        int ia = g.index_of(e.a), ib = g.index_of(e.b);
        double c = e.coupling * std::cos(phases[ib] - phases[ia]);
        J(ia, ib) += c;
        J(ib, ia) += c;
        J(ia, ia) -= c;
        J(ib, ib) -= c;
    }
    return J;
}

double potential_energy(const GridTopology& g, const Vector& phases) {
    check_dimension(g, phases);
    double v = 0.0;
    for (int i = 0; i < g.node_count(); ++i) v -= g.nodes()[i].power * phases[i];
    for (const auto& e : g.edges()) {
        // the double sum in the definition counts each unordered pair twice
        v -= e.coupling * std::cos(phases[g.index_of(e.a)] - phases[g.index_of(e.b)]);
    }
    return v;
}

Equilibrium solve_equilibrium(const GridTopology& g, const Vector& initial,
                              const SolverConfig& cfg) {
    check_dimension(g, initial);
    if (!(cfg.eps1 > 0.0) || !(cfg.eps2 > 0.0) || !(cfg.eps_lambda > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    const int n = g.node_count();

    Equilibrium out;
    out.phases = initial;
    if (n == 0) {
        out.converged = true;
        return out;
    }

    // The residual is invariant under a uniform shift within each connected
    // component, so the Jacobian has one null direction per component. Solve
    // in a reduced space with the first node of every component pinned.
    auto comps = connected_components(g);
    std::vector<bool> pinned(n, false);
    for (const auto& comp : comps) pinned[g.index_of(comp.front())] = true;
    std::vector<int> free_idx;
    for (int i = 0; i < n; ++i)
        if (!pinned[i]) free_idx.push_back(i);
    const int m = static_cast<int>(free_idx.size());

    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> jitter(-cfg.jitter_scale, cfg.jitter_scale);

    Vector theta = initial;
    double fnorm = residual(g, theta).norm();

    if (m == 0) {  // all nodes isolated: nothing to solve
        out.residual_norm = fnorm;
        out.converged = fnorm < cfg.eps2;
        if (!out.converged) out.diagnostic = "no coupled degrees of freedom";
        return out;
    }

    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        out.iterations = iter;
        Vector f = residual(g, theta);
        fnorm = f.norm();
        if (fnorm < cfg.eps2) {
            out.converged = true;
            break;
        }

        Matrix J = jacobian(g, theta);
        Matrix Jr(m, m);
        Vector fr(m);
        for (int r = 0; r < m; ++r) {
            fr[r] = f[free_idx[r]];
            for (int c = 0; c < m; ++c) Jr(r, c) = J(free_idx[r], free_idx[c]);
        }

        Eigen::FullPivLU<Matrix> lu(Jr);
        if (!lu.isInvertible()) {
            // singular reduced Jacobian: jitter and retry, as the stall escape does
            for (int r = 0; r < m; ++r) theta[free_idx[r]] += jitter(rng);
            out.diagnostic = "singular reduced Jacobian; jittered";
            continue;
        }
        Vector step = lu.solve(-fr);

        // downhill line search: halve lambda until |f| strictly decreases
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= cfg.eps_lambda) {
            Vector cand = theta;
            for (int r = 0; r < m; ++r) cand[free_idx[r]] += lambda * step[r];
            double cand_norm = residual(g, cand).norm();
            if (cand_norm < fnorm) {
                theta = cand;
                accepted = true;
                if (lambda * step.norm() < cfg.eps1 && cand_norm < cfg.eps2) {
                    out.converged = true;
                    out.iterations = iter;
                }
                break;
            }
            lambda /= 2.0;
        }
        if (out.converged) break;
        if (!accepted) {
            // downhill factor exhausted
            if (fnorm <= cfg.eps2) {
                out.converged = true;
                break;
            }
            for (int r = 0; r < m; ++r) theta[free_idx[r]] += jitter(rng);
            out.diagnostic = "downhill stalled; jittered";
        }
    }

    fnorm = residual(g, theta).norm();
    if (fnorm < cfg.eps2) out.converged = true;
    out.residual_norm = fnorm;
    out.phases = theta;
    if (!out.converged && out.diagnostic.empty())
        out.diagnostic = "no convergence within " + std::to_string(cfg.max_iterations) +
                         " iterations (|f| = " + std::to_string(fnorm) + ")";
    if (out.converged) out.diagnostic.clear();

    // gauge normalization: zero mean within each component
    for (const auto& comp : comps) {
        double mean = 0.0;
        for (NodeId id : comp) mean += out.phases[g.index_of(id)];
        mean /= static_cast<double>(comp.size());
        for (NodeId id : comp) out.phases[g.index_of(id)] -= mean;
    }
    return out;
}

Equilibrium solve_equilibrium(const GridTopology& g, const SolverConfig& cfg) {
    return solve_equilibrium(g, Vector::Zero(g.node_count()), cfg);
}

}  // namespace swingnet
