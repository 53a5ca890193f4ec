#pragma once

// Watts-Strogatz and Barabasi-Albert network generators.
//
// Both are pure functions of (params, rng stream): the same seed always
// reproduces the same edge set. Iteration orders are fixed and documented
// because they are part of the deterministic contract.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "consim/graph.hpp"
#include "consim/rng.hpp"

namespace consim {

struct WsParams {
    std::size_t n = 100;    ///< node count
    std::size_t k = 4;      ///< ring-lattice neighbors per node, even, k < n
    double beta = 0.1;      ///< rewiring probability in [0, 1]
};

struct BaParams {
    std::size_t n = 100;    ///< node count, n >= m + 1
    std::size_t m = 2;      ///< edges attached per new node, m >= 1
};

namespace detail {

inline std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace detail

/// Attempts per edge to find a valid rewiring target before the edge is
/// kept unchanged (preserves the n*k/2 edge-count invariant).
inline constexpr int kRewireRetryLimit = 100;

/// Watts-Strogatz small-world graph.
///
/// Start from the ring lattice (node i linked to i+-1..i+-k/2 mod n), then
/// visit the lattice edges in creation order (offset j = 1..k/2 outer,
/// node i = 0..n-1 inner) and rewire each independently with probability
/// beta: the far endpoint i+j is replaced by a uniformly random node,
/// rejecting self-loops and existing edges for up to kRewireRetryLimit
/// draws. beta = 0 reproduces the exact ring lattice.
inline Network generate_ws(const WsParams& params, Rng& rng) {
    if (params.k < 2 || params.k % 2 != 0) {
        throw std::invalid_argument("generate_ws: k must be a positive even integer, got " +
                                    std::to_string(params.k));
    }
    if (params.k >= params.n) {
        throw std::invalid_argument("generate_ws: k must be smaller than n");
    }
    if (!(params.beta >= 0.0 && params.beta <= 1.0)) {
        throw std::invalid_argument("generate_ws: beta must lie in [0, 1]");
    }

    const std::size_t n = params.n;
    EdgeList edges;
    edges.reserve(n * params.k / 2);
    std::unordered_set<std::uint64_t> present;
    present.reserve(n * params.k);

    for (std::size_t j = 1; j <= params.k / 2; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<NodeId>(i);
            const auto b = static_cast<NodeId>((i + j) % n);
            edges.emplace_back(a, b);
            present.insert(detail::edge_key(a, b));
        }
    }

    for (auto& [near, far] : edges) {
        if (!rng.bernoulli(params.beta)) continue;
        for (int attempt = 0; attempt < kRewireRetryLimit; ++attempt) {
            const auto target = static_cast<NodeId>(rng.below(n));
            if (target == near) continue;
            if (present.count(detail::edge_key(near, target)) != 0) continue;
            present.erase(detail::edge_key(near, far));
            present.insert(detail::edge_key(near, target));
            far = target;
            break;
        }
    }

    return Network::from_edges(n, std::move(edges));
}

/// Barabasi-Albert preferential-attachment graph.
///
/// The seed is the complete graph on m+1 nodes. Each later node attaches
/// with m distinct edges to existing nodes drawn with probability
/// proportional to their degree (uniform draws from the repeated-endpoint
/// list, re-drawing on duplicates; the list is frozen while one node picks
/// its targets). Total edges: C(m+1, 2) + (n - m - 1) * m. Connected by
/// construction.
inline Network generate_ba(const BaParams& params, Rng& rng) {
    if (params.m < 1) {
        throw std::invalid_argument("generate_ba: m must be at least 1");
    }
    if (params.n < params.m + 1) {
        throw std::invalid_argument("generate_ba: n must be at least m + 1");
    }

    EdgeList edges;
    edges.reserve((params.m + 1) * params.m / 2 + (params.n - params.m - 1) * params.m);

    // Each edge contributes both endpoints, so a uniform draw from this
    // list lands on a node with probability degree / (2 * edge_count).
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * edges.capacity());

    for (std::size_t i = 0; i + 1 <= params.m; ++i) {
        for (std::size_t j = i + 1; j <= params.m; ++j) {
            edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
            endpoints.push_back(static_cast<NodeId>(i));
            endpoints.push_back(static_cast<NodeId>(j));
        }
    }

    std::vector<NodeId> chosen;
    chosen.reserve(params.m);
    for (std::size_t v = params.m + 1; v < params.n; ++v) {
        chosen.clear();
        const std::size_t pool = endpoints.size();
        while (chosen.size() < params.m) {
            const NodeId target = endpoints[rng.below(pool)];
            if (std::find(chosen.begin(), chosen.end(), target) != chosen.end()) continue;
            chosen.push_back(target);
        }
        for (const NodeId target : chosen) {
            edges.emplace_back(static_cast<NodeId>(v), target);
            endpoints.push_back(target);
            endpoints.push_back(static_cast<NodeId>(v));
        }
    }

    return Network::from_edges(params.n, std::move(edges));
}

}  // namespace consim
