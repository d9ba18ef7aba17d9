#include "core/dp.hpp"

#include <limits>
#include <string>

#include "core/errors.hpp"

namespace aoc {

namespace {

void check_multiplier(const AgentSpec&, int horizon, const MultiplierVector& mu) {
    if (static_cast<int>(mu.values.size()) != horizon + 2)
        throw InvalidArgumentError("multiplier vector must have T+2 entries");
}

} // namespace

double priced_cost(const AgentSpec& agent, int horizon, const MultiplierVector& mu,
                   int t, int s, int u) {
    check_multiplier(agent, horizon, mu);
    if (t < 0 || t > horizon || s < 0 || s >= agent.num_states())
        throw InvalidArgumentError("priced_cost index out of range");
    const int j = agent.feasible_position(t, s, u);
    if (j < 0)
        throw FeasibilityError("control " + std::to_string(u) + " infeasible at t=" +
                               std::to_string(t) + " state=" + std::to_string(s));
    return agent.individual_cost[t][s][j] + mu.values[t] * agent.contribution[t][s][j];
}

ValueTable backward_pass(const AgentSpec& agent, int horizon, const MultiplierVector& mu) {
    check_multiplier(agent, horizon, mu);
    const int S = agent.num_states();
    ValueTable table;
    table.values.assign(horizon + 2, std::vector<double>(S, 0.0));
    for (int t = horizon; t >= 0; --t) {
        for (int s = 0; s < S; ++s) {
            const auto& controls = agent.feasible[t][s];
            if (controls.empty())
                throw ValidationError("empty feasible set at t=" + std::to_string(t) +
                                      " state=" + std::to_string(s) +
                                      " (violates Assumption I)");
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < controls.size(); ++j) {
                const double stage = agent.individual_cost[t][s][j] +
                                     mu.values[t] * agent.contribution[t][s][j];
                const double tail = (t < horizon) ? table.values[t + 1][agent.next_state[t][s][j]]
                                                  : 0.0;
                const double total = stage + tail;
                if (total < best) best = total;
            }
            table.values[t][s] = best;
        }
    }
    return table;
}

BestResponse best_response(const AgentSpec& agent, int horizon, const MultiplierVector& mu) {
    const ValueTable table = backward_pass(agent, horizon, mu);

    int s = agent.initial_states.front();
    for (int s0 : agent.initial_states)
        if (table.values[0][s0] < table.values[0][s]) s = s0;

    BestResponse result;
    result.value = table.values[0][s];
    result.trajectory.states.resize(horizon + 1);
    result.trajectory.controls.resize(horizon + 1);
    for (int t = 0; t <= horizon; ++t) {
        result.trajectory.states[t] = s;
        const auto& controls = agent.feasible[t][s];
        int best_j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < controls.size(); ++j) {
            const double stage = agent.individual_cost[t][s][j] +
                                 mu.values[t] * agent.contribution[t][s][j];
            const double tail = (t < horizon) ? table.values[t + 1][agent.next_state[t][s][j]]
                                              : 0.0;
            const double total = stage + tail;
            if (total < best) {
                best = total;
                best_j = static_cast<int>(j);
            }
        }
        result.trajectory.controls[t] = controls[best_j];
        if (t < horizon) s = agent.next_state[t][s][best_j];
    }
    return result;
}

} // namespace aoc
