#pragma once

// The agent-based model: roles, beliefs, the pairwise exchange rule,
// per-timestep edge activation, collective-thought and convergence.
//
// Susceptible agents hold a belief in [0, 2] and average it pairwise;
// conspirators are pinned at belief 0 and never update. One timestep
// activates every edge exactly once in a fresh random order; each
// activation exchanges with probability p_interaction, applied to the
// endpoints' current (possibly already updated this step) beliefs.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "consim/generators.hpp"
#include "consim/graph.hpp"
#include "consim/rng.hpp"

namespace consim {

enum class AgentRole : std::uint8_t { Susceptible, Conspirator };

using TopologyParams = std::variant<WsParams, BaParams>;

inline const char* topology_name(const TopologyParams& topology) {
    return std::holds_alternative<WsParams>(topology) ? "ws" : "ba";
}

inline Network generate_topology(const TopologyParams& topology, Rng& rng) {
    if (const auto* ws = std::get_if<WsParams>(&topology)) return generate_ws(*ws, rng);
    return generate_ba(std::get<BaParams>(topology), rng);
}

struct SimConfig {
    std::size_t n = 100;               ///< total agents
    std::size_t n_conspirators = 4;    ///< forceful agents pinned at belief 0
    double p_interaction = 0.5;        ///< exchange probability per activation
    double epsilon = 0.01;             ///< convergence threshold on collective-thought
    std::size_t max_steps = 100000;
    /// The underlying state the susceptible population estimates. Carried
    /// for reporting only; the dynamics never read it.
    double theta_true = 1.0;
    TopologyParams topology = WsParams{100, 4, 0.1};
    std::uint64_t master_seed = 1;
    /// Explicit conspirator placement (must have n_conspirators entries);
    /// empty selects uniformly at random.
    std::vector<NodeId> conspirator_ids;
};

/// Evolving state of one run. `susceptible_sum` is maintained incrementally:
/// susceptible-susceptible exchanges conserve it by definition (both agents
/// get the same average), and only susceptible-conspirator exchanges add
/// their exactly-representable, nonpositive belief delta. This makes the
/// collective-thought trajectory bit-stable under pure averaging steps and
/// never increasing, which a fresh float re-summation cannot promise.
struct SimState {
    Network network;
    std::vector<AgentRole> roles;
    std::vector<double> beliefs;
    std::size_t step = 0;
    double susceptible_sum = 0.0;
    std::size_t susceptible_count = 0;
};

/// Builds a state from explicit parts; validates sizes, pinned conspirator
/// beliefs and the [0, 2] belief range, and computes the susceptible sum.
inline SimState make_state(Network network, std::vector<AgentRole> roles,
                           std::vector<double> beliefs) {
    if (roles.size() != network.node_count || beliefs.size() != network.node_count) {
        throw std::invalid_argument("make_state: roles/beliefs size must match node count");
    }
    SimState state{std::move(network), std::move(roles), std::move(beliefs), 0, 0.0, 0};
    for (std::size_t i = 0; i < state.roles.size(); ++i) {
        const double b = state.beliefs[i];
        if (!(b >= 0.0 && b <= 2.0)) {
            throw std::invalid_argument("make_state: belief out of [0, 2] at agent " +
                                        std::to_string(i));
        }
        if (state.roles[i] == AgentRole::Conspirator) {
            if (b != 0.0) {
                throw std::invalid_argument("make_state: conspirator belief must be 0");
            }
        } else {
            state.susceptible_sum += b;
            ++state.susceptible_count;
        }
    }
    return state;
}

/// Fresh state at step 0: n_conspirators distinct agents are pinned at 0
/// (uniformly random unless config.conspirator_ids overrides placement),
/// every other agent draws an independent uniform belief from [0, 2].
inline SimState init_sim(Network network, const SimConfig& config, Rng& rng) {
    if (network.node_count != config.n) {
        throw std::invalid_argument("init_sim: network size does not match config.n");
    }
    if (config.n_conspirators >= config.n) {
        throw std::invalid_argument("init_sim: n_conspirators must be smaller than n");
    }

    std::vector<AgentRole> roles(config.n, AgentRole::Susceptible);
    if (!config.conspirator_ids.empty()) {
        if (config.conspirator_ids.size() != config.n_conspirators) {
            throw std::invalid_argument(
                "init_sim: conspirator_ids must have n_conspirators entries");
        }
        for (const NodeId id : config.conspirator_ids) {
            if (id >= config.n) {
                throw std::invalid_argument("init_sim: conspirator id out of range");
            }
            if (roles[id] == AgentRole::Conspirator) {
                throw std::invalid_argument("init_sim: duplicate conspirator id");
            }
            roles[id] = AgentRole::Conspirator;
        }
    } else {
        // Partial Fisher-Yates: the first n_conspirators entries end up a
        // uniform sample without replacement.
        std::vector<NodeId> ids(config.n);
        for (std::size_t i = 0; i < config.n; ++i) ids[i] = static_cast<NodeId>(i);
        for (std::size_t i = 0; i < config.n_conspirators; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(config.n - i));
            std::swap(ids[i], ids[j]);
            roles[ids[i]] = AgentRole::Conspirator;
        }
    }

    std::vector<double> beliefs(config.n, 0.0);
    for (std::size_t i = 0; i < config.n; ++i) {
        if (roles[i] == AgentRole::Susceptible) beliefs[i] = rng.uniform(0.0, 2.0);
    }

    return make_state(std::move(network), std::move(roles), std::move(beliefs));
}

/// Outcome of one exchange between agents i and j; the p_interaction coin
/// is the caller's job. Susceptible pairs both move to the average
/// (x_i + x_j) / 2; a susceptible meeting a conspirator halves toward 0
/// while the conspirator stays pinned; two conspirators share nothing.
inline std::pair<double, double> pairwise_update(double belief_i, AgentRole role_i,
                                                 double belief_j, AgentRole role_j) {
    const bool i_susceptible = role_i == AgentRole::Susceptible;
    const bool j_susceptible = role_j == AgentRole::Susceptible;
    if (i_susceptible && j_susceptible) {
        const double avg = 0.5 * (belief_i + belief_j);
        return {avg, avg};
    }
    if (i_susceptible) return {0.5 * belief_i, belief_j};
    if (j_susceptible) return {belief_i, 0.5 * belief_j};
    return {belief_i, belief_j};
}

namespace detail {

/// One timestep with caller-provided scratch for the activation order.
inline void step_impl(SimState& state, const SimConfig& config, Rng& rng,
                      std::vector<std::uint32_t>& order) {
    const std::size_t edge_count = state.network.edge_count();
    order.resize(edge_count);
    for (std::size_t i = 0; i < edge_count; ++i) order[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(order);

    for (const std::uint32_t idx : order) {
        const auto [a, b] = state.network.edges[idx];
        if (!rng.bernoulli(config.p_interaction)) continue;
        const auto [next_a, next_b] =
            pairwise_update(state.beliefs[a], state.roles[a], state.beliefs[b], state.roles[b]);
        if (state.roles[a] == AgentRole::Susceptible &&
            state.roles[b] == AgentRole::Conspirator) {
            state.susceptible_sum += next_a - state.beliefs[a];
        } else if (state.roles[a] == AgentRole::Conspirator &&
                   state.roles[b] == AgentRole::Susceptible) {
            state.susceptible_sum += next_b - state.beliefs[b];
        }
        state.beliefs[a] = next_a;
        state.beliefs[b] = next_b;
    }
    ++state.step;
}

}  // namespace detail

/// One timestep: every edge activated exactly once in a fresh uniformly
/// random order, each activation exchanging with probability p_interaction
/// against the endpoints' current beliefs. An agent therefore communicates
/// at most degree-many times per step.
inline void step(SimState& state, const SimConfig& config, Rng& rng) {
    std::vector<std::uint32_t> order;
    detail::step_impl(state, config, rng, order);
}

/// Arithmetic mean of susceptible beliefs (the population's collective
/// belief about the underlying state).
inline double collective_thought(const SimState& state) {
    if (state.susceptible_count == 0) {
        throw std::domain_error("collective_thought: no susceptible agents");
    }
    return state.susceptible_sum / static_cast<double>(state.susceptible_count);
}

struct ConvergenceResult {
    bool converged = false;
    std::size_t steps = 0;                   ///< valid iff converged
    double final_collective_thought = 0.0;
    std::vector<double> trajectory;          ///< per-step collective-thought, index = step
};

/// Steps until collective-thought first drops below config.epsilon
/// (converged, steps = that timestep) or config.max_steps is reached
/// (converged = false; not an error). Records the trajectory, including
/// the step-0 value, when asked.
inline ConvergenceResult run_to_convergence(SimState& state, const SimConfig& config,
                                            Rng& rng, bool record_trajectory = false) {
    ConvergenceResult result;
    std::vector<std::uint32_t> order;
    double ct = collective_thought(state);
    if (record_trajectory) result.trajectory.push_back(ct);
    while (ct >= config.epsilon && state.step < config.max_steps) {
        detail::step_impl(state, config, rng, order);
        ct = collective_thought(state);
        if (record_trajectory) result.trajectory.push_back(ct);
    }
    result.converged = ct < config.epsilon;
    result.steps = state.step;
    result.final_collective_thought = ct;
    return result;
}

}  // namespace consim
