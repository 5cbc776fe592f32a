#include "swingnet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace swingnet {

GridTopology::GridTopology(std::vector<GridNode> nodes, std::vector<GridEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    for (auto& e : edges_) {
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end(), [](const GridEdge& x, const GridEdge& y) {
        return std::pair{x.a, x.b} < std::pair{y.a, y.b};
    });
    for (int k = 0; k < static_cast<int>(nodes_.size()); ++k) {
        index_.emplace(nodes_[k].id, k);  // duplicate ids keep the first; validate_grid reports them
    }
}

bool GridTopology::has_node(NodeId id) const { return index_.count(id) > 0; }

bool GridTopology::has_edge(NodeId a, NodeId b) const {
    if (a > b) std::swap(a, b);
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const GridEdge& e) { return e.a == a && e.b == b; });
}

int GridTopology::index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw GridError("unknown node id " + std::to_string(id));
    return it->second;
}

const GridNode& GridTopology::node(NodeId id) const { return nodes_[index_of(id)]; }

const GridEdge& GridTopology::edge(NodeId a, NodeId b) const {
    if (a > b) std::swap(a, b);
    for (const auto& e : edges_) {
        if (e.a == a && e.b == b) return e;
    }
    throw GridError("no edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
}

int GridTopology::degree(NodeId id) const {
    int d = 0;
    for (const auto& e : edges_) d += e.connects(id) ? 1 : 0;
    return d;
}

double GridTopology::total_power() const {
    double s = 0.0;
    for (const auto& n : nodes_) s += n.power;
    return s;
}

std::vector<Violation> validate_grid(const GridTopology& g) {
    std::vector<Violation> out;
    auto add = [&](std::string rule, std::string detail) {
        out.push_back({std::move(rule), std::move(detail)});
    };

    if (g.nodes().empty()) add("empty-grid", "grid has no nodes");

    std::set<NodeId> seen;
    for (const auto& n : g.nodes()) {
        if (!seen.insert(n.id).second)
            add("duplicate-node", "node id " + std::to_string(n.id) + " appears more than once");
        if (!(n.inertia > 0.0))
            add("nonpositive-inertia", "node " + std::to_string(n.id) + " has inertia " +
                                           std::to_string(n.inertia));
        if (!(n.damping > 0.0))
            add("nonpositive-damping", "node " + std::to_string(n.id) + " has damping " +
                                           std::to_string(n.damping));
    }

    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const auto& e : g.edges()) {
        std::string name = "(" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")";
        if (e.a == e.b) add("self-loop", "edge " + name + " is a self loop");
        if (!pairs.insert({e.a, e.b}).second) add("duplicate-edge", "edge " + name + " is duplicated");
        if (!(e.coupling > 0.0))
            add("nonpositive-coupling", "edge " + name + " has coupling " + std::to_string(e.coupling));
        if (!seen.count(e.a) || !seen.count(e.b))
            add("dangling-edge", "edge " + name + " references a missing node");
    }

    if (!g.nodes().empty()) {
        double total = g.total_power();
        if (std::abs(total) >= kPowerBalanceTol) {
            std::ostringstream os;
            os << "sum of powers is " << total << " (|sum| must be < " << kPowerBalanceTol << ")";
            add("power-imbalance", os.str());
        }
    }
    return out;
}

GridTopology remove_edge(const GridTopology& g, NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    auto edges = g.edges();
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const GridEdge& e) { return e.a == a && e.b == b; });
    if (it == edges.end())
        throw GridError("cannot remove missing edge (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")");
    edges.erase(it);
    return GridTopology(g.nodes(), std::move(edges));
}

GridTopology remove_node(const GridTopology& g, NodeId i) {
    if (!g.has_node(i)) throw GridError("cannot remove missing node " + std::to_string(i));
    std::vector<GridNode> nodes;
    nodes.reserve(g.nodes().size() - 1);
    for (const auto& n : g.nodes())
        if (n.id != i) nodes.push_back(n);
    std::vector<GridEdge> edges;
    for (const auto& e : g.edges())
        if (!e.connects(i)) edges.push_back(e);
    return GridTopology(std::move(nodes), std::move(edges));
}

std::vector<std::vector<NodeId>> connected_components(const GridTopology& g) {
    std::map<NodeId, NodeId> parent;
    for (const auto& n : g.nodes()) parent[n.id] = n.id;

    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : g.edges()) {
        if (!parent.count(e.a) || !parent.count(e.b)) continue;
        NodeId ra = find(e.a), rb = find(e.b);
        if (ra != rb) parent[ra] = rb;
    }

    std::map<NodeId, std::vector<NodeId>> groups;
    for (const auto& n : g.nodes()) groups[find(n.id)].push_back(n.id);

    std::vector<std::vector<NodeId>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return out;
}

}  // namespace swingnet
