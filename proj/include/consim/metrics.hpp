#pragma once

// Structural network measurements: mean path length and eigenvector
// centrality. Both require a connected graph.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "consim/errors.hpp"
#include "consim/graph.hpp"

namespace consim {

namespace detail {

/// BFS distances from `source`; unreached nodes stay at -1.
/// Returns the number of reached nodes.
inline std::size_t bfs_distances(const Network& g, NodeId source, std::vector<std::int32_t>& dist) {
    dist.assign(g.node_count, -1);
    std::vector<NodeId> queue;
    queue.reserve(g.node_count);
    queue.push_back(source);
    dist[source] = 0;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (const NodeId v : g.adjacency[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                ++reached;
                queue.push_back(v);
            }
        }
    }
    return reached;
}

}  // namespace detail

/// Average unweighted shortest-path distance over all C(n, 2) distinct node
/// pairs, via one BFS per node. Distance sums are accumulated in integers,
/// so the result is the exactly-rounded ratio sum / C(n, 2).
inline double mean_path_length(const Network& g) {
    if (g.node_count < 2) {
        throw std::domain_error("mean_path_length: need at least 2 nodes");
    }
    std::vector<std::int32_t> dist;
    std::uint64_t total = 0;  // sum over ordered pairs = 2 * sum over unordered
    for (std::size_t src = 0; src < g.node_count; ++src) {
        if (detail::bfs_distances(g, static_cast<NodeId>(src), dist) != g.node_count) {
            throw std::domain_error("mean_path_length: graph is disconnected");
        }
        for (const std::int32_t d : dist) total += static_cast<std::uint64_t>(d);
    }
    const auto ordered_pairs = static_cast<double>(g.node_count) * static_cast<double>(g.node_count - 1);
    return static_cast<double>(total) / ordered_pairs;
}

/// Per-node eigenvector centrality scores, Euclidean norm 1, all entries
/// positive on a connected graph.
struct CentralityVector {
    std::vector<double> scores;
};

/// Perron eigenvector of the adjacency matrix by power iteration on A + I.
/// The identity shift leaves eigenvectors unchanged and keeps the iteration
/// from oscillating on bipartite graphs (stars, even cycles). Starts from
/// the uniform unit vector; stops when successive normalized iterates agree
/// to `tol` in max-norm.
inline CentralityVector eigenvector_centrality(const Network& g, double tol = 1e-10,
                                               std::size_t max_iter = 10000) {
    if (tol <= 0.0) {
        throw std::invalid_argument("eigenvector_centrality: tol must be positive");
    }
    if (g.node_count < 2) {
        throw std::domain_error("eigenvector_centrality: need at least 2 nodes");
    }
    if (!is_connected(g)) {
        throw std::domain_error("eigenvector_centrality: graph is disconnected");
    }

    const std::size_t n = g.node_count;
    std::vector<double> current(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n, 0.0);

    double residual = 0.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = current[i];  // the +I term
            for (const NodeId j : g.adjacency[i]) acc += current[j];
            next[i] = acc;
        }
        double norm_sq = 0.0;
        for (const double v : next) norm_sq += v * v;
        const double norm = std::sqrt(norm_sq);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= norm;
            residual = std::max(residual, std::fabs(next[i] - current[i]));
        }
        current.swap(next);
        if (residual < tol) {
            return CentralityVector{std::move(current)};
        }
    }
    throw NumericError("eigenvector_centrality: no convergence after " +
                       std::to_string(max_iter) + " iterations, last residual " +
                       std::to_string(residual));
}

/// Sum of centrality scores over the given node ids (empty set sums to 0).
inline double conspirator_centrality_sum(const CentralityVector& cv,
                                         const std::vector<NodeId>& ids) {
    double sum = 0.0;
    for (const NodeId id : ids) {
        if (id >= cv.scores.size()) {
            throw std::invalid_argument("conspirator_centrality_sum: node id " +
                                        std::to_string(id) + " out of range");
        }
        sum += cv.scores[id];
    }
    return sum;
}

}  // namespace consim
