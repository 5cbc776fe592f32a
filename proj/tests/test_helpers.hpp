#pragma once

#include <random>

#include "swingnet/grid.hpp"

namespace swingnet::testing {

inline GridTopology two_node_grid(double p = 1.0, double coupling = 2.0, double damping = 0.6) {
    return GridTopology({{1, +p, 1.0, damping}, {2, -p, 1.0, damping}}, {{1, 2, coupling}});
}

/// The bundled five-node demonstration grid, built in code for unit tests
/// that should not depend on the data directory.
inline GridTopology five_node_grid() {
    std::vector<GridNode> nodes;
    double powers[] = {-1.0, 1.5, -1.0, -1.0, 1.5};
    for (int i = 0; i < 5; ++i) nodes.push_back({i + 1, powers[i], 1.0, 0.6});
    std::vector<GridEdge> edges;
    for (auto [a, b] : {std::pair{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {4, 5}})
        edges.push_back({a, b, 1.63});
    return GridTopology(std::move(nodes), std::move(edges));
}

/// Random connected grid: spanning tree plus extra chords, powers scaled so
/// the equilibrium stays well inside |phase difference| < pi/2.
inline GridTopology random_connected_grid(std::mt19937_64& rng, int n, int extra_edges,
                                          double coupling = 2.0, double power_scale = 0.3,
                                          double damping = 0.6) {
    std::vector<GridEdge> edges;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(unit(rng) * v);
        edges.push_back({u + 1, v + 1, coupling});
    }
    auto has = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (const auto& e : edges)
            if (e.a == a && e.b == b) return true;
        return false;
    };
    int added = 0, guard = 0;
    while (added < extra_edges && guard++ < 10000) {
        int a = static_cast<int>(unit(rng) * n) + 1;
        int b = static_cast<int>(unit(rng) * n) + 1;
        if (a == b || has(a, b)) continue;
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, coupling});
        ++added;
    }
    std::vector<GridNode> nodes;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double p = (unit(rng) * 2.0 - 1.0) * power_scale;
        sum += p;
        nodes.push_back({i + 1, p, 1.0, damping});
    }
    for (auto& nd : nodes) nd.power -= sum / n;
    return GridTopology(std::move(nodes), std::move(edges));
}

}  // namespace swingnet::testing
