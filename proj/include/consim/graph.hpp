#pragma once

// Undirected simple graph with dense node ids 0..node_count-1.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace consim {

using NodeId = std::uint32_t;

/// Unordered edge, stored canonically as first < second.
using Edge = std::pair<NodeId, NodeId>;
using EdgeList = std::vector<Edge>;

/// Immutable-by-convention graph. `edges` is the source of truth, kept in
/// canonical form (first < second, sorted lexicographically); `adjacency`
/// mirrors it exactly and is rebuilt whenever the edge set is assembled,
/// never patched incrementally.
struct Network {
    std::size_t node_count = 0;
    EdgeList edges;
    std::vector<std::vector<NodeId>> adjacency;

    [[nodiscard]] std::size_t edge_count() const { return edges.size(); }
    [[nodiscard]] std::size_t degree(NodeId node) const { return adjacency[node].size(); }

    /// Builds a validated Network: canonicalizes edge orientation, sorts,
    /// and rejects self-loops, duplicates and out-of-range endpoints.
    static Network from_edges(std::size_t node_count, EdgeList raw_edges) {
        for (auto& [a, b] : raw_edges) {
            if (a == b) {
                throw std::invalid_argument("Network: self-loop at node " + std::to_string(a));
            }
            if (a >= node_count || b >= node_count) {
                throw std::invalid_argument("Network: edge endpoint out of range");
            }
            if (a > b) std::swap(a, b);
        }
        std::sort(raw_edges.begin(), raw_edges.end());
        if (std::adjacent_find(raw_edges.begin(), raw_edges.end()) != raw_edges.end()) {
            throw std::invalid_argument("Network: duplicate edge");
        }

        Network g;
        g.node_count = node_count;
        g.edges = std::move(raw_edges);
        g.adjacency.assign(node_count, {});
        for (const auto& [a, b] : g.edges) {
            g.adjacency[a].push_back(b);
            g.adjacency[b].push_back(a);
        }
        for (auto& neighbors : g.adjacency) {
            std::sort(neighbors.begin(), neighbors.end());
        }
        return g;
    }
};

/// True iff a single traversal from node 0 reaches every node.
/// The empty and single-node graphs count as connected.
inline bool is_connected(const Network& g) {
    if (g.node_count <= 1) return true;
    std::vector<bool> seen(g.node_count, false);
    std::vector<NodeId> queue;
    queue.reserve(g.node_count);
    queue.push_back(0);
    seen[0] = true;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const NodeId next : g.adjacency[queue[head]]) {
            if (!seen[next]) {
                seen[next] = true;
                ++reached;
                queue.push_back(next);
            }
        }
    }
    return reached == g.node_count;
}

}  // namespace consim
