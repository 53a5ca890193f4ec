#include <doctest.h>

#include <cmath>
#include <numeric>

#include "consim/generators.hpp"
#include "consim/metrics.hpp"
#include "oracles.hpp"

using namespace consim;

namespace {

Network complete_graph(std::size_t n) {
    EdgeList edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return Network::from_edges(n, std::move(edges));
}

}  // namespace

TEST_CASE("mean path length on small fixed graphs") {
    // path 0-1-2: distances {1, 1, 2}
    Network path = Network::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(mean_path_length(path) == 4.0 / 3.0);
    CHECK(mean_path_length(path) == oracles::mean_path_length(path));

    CHECK(mean_path_length(complete_graph(4)) == 1.0);

    // C5: per-node distances {1, 1, 2, 2}
    Network c5 = Network::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(mean_path_length(c5) == 1.5);
    CHECK(mean_path_length(c5) == oracles::mean_path_length(c5));
}

TEST_CASE("mean path length domain errors") {
    Network two = Network::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    CHECK_THROWS_AS((void)mean_path_length(two), std::domain_error);
    CHECK_THROWS_AS((void)mean_path_length(Network::from_edges(1, {})), std::domain_error);
}

TEST_CASE("mean path length equals the Floyd-Warshall oracle on random graphs") {
    Rng rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(11);  // up to 12 nodes
        const std::size_t extra = rng.below(n);
        Network g = oracles::random_connected_graph(n, extra, rng);
        CHECK(mean_path_length(g) == oracles::mean_path_length(g));
    }
}

TEST_CASE("mean path length is 1 exactly iff the graph is complete") {
    for (std::size_t n : {2, 3, 5, 9}) {
        CHECK(mean_path_length(complete_graph(n)) == 1.0);
    }
    // remove one edge from K5: no longer 1
    Network almost = Network::from_edges(
        5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(mean_path_length(almost) > 1.0);

    Rng rng(616);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.below(9);
        Network g = oracles::random_connected_graph(n, rng.below(n * n), rng);
        const bool complete = g.edge_count() == n * (n - 1) / 2;
        CHECK((mean_path_length(g) == 1.0) == complete);
    }
}

TEST_CASE("eigenvector centrality on symmetric graphs") {
    const CentralityVector k4 = eigenvector_centrality(complete_graph(4));
    for (const double s : k4.scores) CHECK(s == doctest::Approx(0.5).epsilon(1e-9));

    Network c4 = Network::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const CentralityVector cycle = eigenvector_centrality(c4);
    for (const double s : cycle.scores) CHECK(s == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("eigenvector centrality matches the star closed form") {
    // center 0 with 3 leaves: center/leaf ratio sqrt(3), unit norm
    Network star = Network::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    const CentralityVector cv = eigenvector_centrality(star);
    const double leaf = 1.0 / std::sqrt(6.0);
    const double center = std::sqrt(3.0) / std::sqrt(6.0);
    CHECK(cv.scores[0] == doctest::Approx(center).epsilon(1e-6));
    for (int i = 1; i < 4; ++i) CHECK(cv.scores[i] == doctest::Approx(leaf).epsilon(1e-6));
    CHECK(cv.scores[0] / cv.scores[1] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
    CHECK(cv.scores[0] == doctest::Approx(0.70711).epsilon(1e-4));
    CHECK(cv.scores[1] == doctest::Approx(0.40825).epsilon(1e-4));
}

TEST_CASE("eigenvector centrality satisfies the eigen equation") {
    Rng rng(555);
    std::vector<Network> graphs;
    graphs.push_back(complete_graph(4));
    graphs.push_back(Network::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
    graphs.push_back(Network::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
    for (int trial = 0; trial < 20; ++trial) {
        graphs.push_back(oracles::random_connected_graph(2 + rng.below(11), rng.below(8), rng));
    }
    Rng gen(1);
    graphs.push_back(generate_ws({100, 4, 0.1}, gen));
    graphs.push_back(generate_ba({100, 2}, gen));

    for (const Network& g : graphs) {
        const CentralityVector cv = eigenvector_centrality(g);
        double norm_sq = 0.0;
        for (const double s : cv.scores) {
            CHECK(s > 0.0);
            norm_sq += s * s;
        }
        CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(oracles::eigen_residual(g, cv.scores) < 1e-6);
    }
}

TEST_CASE("eigenvector centrality is invariant under relabeling") {
    Rng rng(808);
    Network g = oracles::random_connected_graph(10, 6, rng);
    std::vector<NodeId> perm(10);
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(perm);
    Network h = oracles::permute_network(g, perm);

    const CentralityVector cg = eigenvector_centrality(g);
    const CentralityVector ch = eigenvector_centrality(h);
    for (NodeId i = 0; i < 10; ++i) {
        CHECK(ch.scores[perm[i]] == doctest::Approx(cg.scores[i]).epsilon(1e-9));
    }
}

TEST_CASE("eigenvector centrality error paths") {
    Network two = Network::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS((void)eigenvector_centrality(two), std::domain_error);
    CHECK_THROWS_AS((void)eigenvector_centrality(Network::from_edges(1, {})), std::domain_error);
    CHECK_THROWS_AS((void)eigenvector_centrality(complete_graph(3), 0.0), std::invalid_argument);

    // a path graph converges too slowly for a single iteration
    Network path = Network::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    CHECK_THROWS_AS((void)eigenvector_centrality(path, 1e-10, 1), NumericError);
}

TEST_CASE("conspirator centrality sum") {
    const CentralityVector k4 = eigenvector_centrality(complete_graph(4));
    CHECK(conspirator_centrality_sum(k4, {0, 1}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(conspirator_centrality_sum(k4, {}) == 0.0);

    Network star = Network::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    const CentralityVector cv = eigenvector_centrality(star);
    CHECK(conspirator_centrality_sum(cv, {0}) == doctest::Approx(0.70711).epsilon(1e-4));

    CHECK_THROWS_AS((void)conspirator_centrality_sum(k4, {7}), std::invalid_argument);
}
