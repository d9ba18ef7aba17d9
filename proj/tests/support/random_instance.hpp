#pragma once

// Seeded random agents/instances for the test and acceptance suites, plus
// brute-force oracles that stay independent of the solver code paths they
// check (they work by explicit trajectory enumeration only).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/instance.hpp"
#include "core/rng.hpp"
#include "core/social.hpp"

namespace aoc::testsupport {

struct RandomShape {
    int max_states = 5;
    int max_controls = 4;
    int max_horizon = 4;
    int max_agents = 4;
    double value_scale = 2.0; // h and l drawn from [-scale, scale]
};

class Draw {
public:
    explicit Draw(uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) {
        return static_cast<int>(rng_.uniform_int(lo, hi, RngStream::test, next_++));
    }
    double real(double lo, double hi) {
        return rng_.uniform_real(lo, hi, RngStream::test, next_++);
    }

private:
    CounterRng rng_;
    uint32_t next_ = 0;
};

inline AgentSpec random_agent(Draw& draw, int horizon, const RandomShape& shape) {
    AgentSpec agent;
    const int S = draw.integer(1, shape.max_states);
    const int U = draw.integer(1, shape.max_controls);
    for (int s = 0; s < S; ++s) agent.state_labels.push_back("s" + std::to_string(s));
    for (int u = 0; u < U; ++u) agent.control_labels.push_back("u" + std::to_string(u));

    for (int s = 0; s < S; ++s)
        if (draw.real(0.0, 1.0) < 0.5) agent.initial_states.push_back(s);
    if (agent.initial_states.empty()) agent.initial_states.push_back(draw.integer(0, S - 1));

    agent.feasible.resize(horizon + 1);
    agent.next_state.resize(horizon);
    agent.contribution.resize(horizon + 1);
    agent.individual_cost.resize(horizon + 1);
    for (int t = 0; t <= horizon; ++t) {
        agent.feasible[t].resize(S);
        agent.contribution[t].resize(S);
        agent.individual_cost[t].resize(S);
        if (t < horizon) agent.next_state[t].resize(S);
        for (int s = 0; s < S; ++s) {
            for (int u = 0; u < U; ++u)
                if (draw.real(0.0, 1.0) < 0.6) agent.feasible[t][s].push_back(u);
            if (agent.feasible[t][s].empty())
                agent.feasible[t][s].push_back(draw.integer(0, U - 1));
            for (std::size_t j = 0; j < agent.feasible[t][s].size(); ++j) {
                if (t < horizon) agent.next_state[t][s].push_back(draw.integer(0, S - 1));
                agent.contribution[t][s].push_back(
                    draw.real(-shape.value_scale, shape.value_scale));
                agent.individual_cost[t][s].push_back(
                    draw.real(-shape.value_scale, shape.value_scale));
            }
        }
    }
    return agent;
}

inline std::vector<SocialCostBlock> random_social(Draw& draw, int horizon) {
    std::vector<SocialCostBlock> social;
    for (int t = 0; t <= horizon; ++t) {
        const double pick = draw.real(0.0, 1.0);
        if (pick < 0.6)
            social.push_back(SocialCostBlock::quadratic(draw.real(0.0, 2.0),
                                                        draw.real(-1.0, 1.0)));
        else if (pick < 0.8)
            social.push_back(SocialCostBlock::linear(draw.real(-1.0, 1.0)));
        else
            social.push_back(SocialCostBlock::zero());
    }
    social.push_back(SocialCostBlock::identity());
    return social;
}

inline OcInstance random_instance(uint64_t seed, const RandomShape& shape = {}) {
    Draw draw(seed);
    OcInstance instance;
    instance.horizon = draw.integer(1, shape.max_horizon);
    instance.num_agents = draw.integer(1, shape.max_agents);
    for (int i = 0; i < instance.num_agents; ++i)
        instance.agents.push_back(random_agent(draw, instance.horizon, shape));
    instance.social = random_social(draw, instance.horizon);
    return instance;
}

// Random instance whose total trajectory-combination count stays under the
// cap (seed is advanced deterministically until one qualifies).
inline OcInstance random_capped_instance(uint64_t seed, double max_combinations,
                                         RandomShape shape = {}) {
    for (uint64_t attempt = 0;; ++attempt) {
        OcInstance instance = random_instance(seed + 1000003 * attempt, shape);
        double combos = 1.0;
        for (const auto& agent : instance.agents)
            combos *= count_trajectories(agent, instance.horizon);
        if (combos <= max_combinations) return instance;
    }
}

inline MultiplierVector random_multiplier(Draw& draw, int horizon, double lo, double hi) {
    MultiplierVector mu;
    for (int t = 0; t < horizon + 2; ++t) mu.values.push_back(draw.real(lo, hi));
    return mu;
}

// Priced cost of one trajectory, summed directly from the tables.
inline double priced_total(const AgentSpec& agent, int horizon, const MultiplierVector& mu,
                           const Trajectory& traj) {
    double total = 0.0;
    for (int t = 0; t <= horizon; ++t) {
        const int s = traj.states[t];
        const int j = agent.feasible_position(t, s, traj.controls[t]);
        total += agent.individual_cost[t][s][j] + mu.values[t] * agent.contribution[t][s][j];
    }
    return total;
}

// Exhaustive priced minimum; the oracle for the DP best response.
inline double brute_force_priced_minimum(const AgentSpec& agent, int horizon,
                                         const MultiplierVector& mu) {
    double best = std::numeric_limits<double>::infinity();
    for (const Trajectory& traj : enumerate_trajectories(agent, horizon))
        best = std::min(best, priced_total(agent, horizon, mu, traj));
    return best;
}

// Uniformly random feasible trajectory (for sampling-style witnesses).
inline Trajectory random_trajectory(Draw& draw, const AgentSpec& agent, int horizon) {
    Trajectory traj;
    traj.states.resize(horizon + 1);
    traj.controls.resize(horizon + 1);
    int s = agent.initial_states[draw.integer(0, static_cast<int>(agent.initial_states.size()) - 1)];
    for (int t = 0; t <= horizon; ++t) {
        traj.states[t] = s;
        const auto& list = agent.feasible[t][s];
        const int j = draw.integer(0, static_cast<int>(list.size()) - 1);
        traj.controls[t] = list[j];
        if (t < horizon) s = agent.next_state[t][s][j];
    }
    return traj;
}

inline std::vector<Trajectory> random_profile(Draw& draw, const OcInstance& instance) {
    std::vector<Trajectory> x;
    for (const auto& agent : instance.agents)
        x.push_back(random_trajectory(draw, agent, instance.horizon));
    return x;
}

} // namespace aoc::testsupport
