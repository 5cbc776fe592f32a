#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace swingnet {

using NodeId = int;

/// One rotating machine: a generator (power > 0) or a consumer (power < 0).
/// Power is in per-unit (1 p.u. = 100 MW).
struct GridNode {
    NodeId id = 0;
    double power = 0.0;
    double inertia = 1.0;
    double damping = 1.0;
};

/// Undirected transmission line with symmetric coupling strength.
/// Stored with a < b so each unordered pair has one canonical record.
struct GridEdge {
    NodeId a = 0;
    NodeId b = 0;
    double coupling = 1.0;

    [[nodiscard]] bool connects(NodeId i) const { return a == i || b == i; }
    [[nodiscard]] NodeId other(NodeId i) const { return a == i ? b : a; }
};

struct Violation {
    std::string rule;     // short machine-readable rule name
    std::string detail;   // human-readable description naming node/edge
};

class GridError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Weighted oscillator network. Immutable after construction; the mutating
/// operations below return modified copies.
class GridTopology {
public:
    GridTopology() = default;
    GridTopology(std::vector<GridNode> nodes, std::vector<GridEdge> edges);

    [[nodiscard]] const std::vector<GridNode>& nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<GridEdge>& edges() const { return edges_; }
    [[nodiscard]] int node_count() const { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }

    [[nodiscard]] bool has_node(NodeId id) const;
    [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;

    /// Dense index of a node id (phases/matrices are indexed this way).
    [[nodiscard]] int index_of(NodeId id) const;
    [[nodiscard]] const GridNode& node(NodeId id) const;
    [[nodiscard]] const GridEdge& edge(NodeId a, NodeId b) const;

    [[nodiscard]] int degree(NodeId id) const;
    [[nodiscard]] double total_power() const;

private:
    std::vector<GridNode> nodes_;
    std::vector<GridEdge> edges_;
    std::map<NodeId, int> index_;
};

/// Empty result means every invariant holds. Violations are data, not errors.
[[nodiscard]] std::vector<Violation> validate_grid(const GridTopology& g);

/// Copy of g without edge (a, b). Throws GridError if the edge is missing.
[[nodiscard]] GridTopology remove_edge(const GridTopology& g, NodeId a, NodeId b);

/// Copy of g without node i and all incident edges. The result may be power
/// unbalanced; callers rebalance via cascade::redistribute_power.
[[nodiscard]] GridTopology remove_node(const GridTopology& g, NodeId i);

/// Partition of the node ids into connected components, each sorted,
/// components ordered by smallest member.
[[nodiscard]] std::vector<std::vector<NodeId>> connected_components(const GridTopology& g);

/// Tolerance on |sum of powers| accepted by validate_grid.
inline constexpr double kPowerBalanceTol = 1e-9;

}  // namespace swingnet
