#pragma once

#include "core/instance.hpp"
#include "core/social.hpp"

namespace aoc {

// Value functions V^t(s) of the priced subproblem, t = 0..T+1 (row T+1 is
// identically zero). values[t][s] is the optimal priced cost-to-go.
struct ValueTable {
    std::vector<std::vector<double>> values;
};

// l[mu](t,s,u) = l(t,s,u) + mu_t * h(t,s,u). Throws FeasibilityError when u
// is not feasible at (t,s). The terminal multiplier entry never enters.
double priced_cost(const AgentSpec& agent, int horizon, const MultiplierVector& mu,
                   int t, int s, int u);

ValueTable backward_pass(const AgentSpec& agent, int horizon, const MultiplierVector& mu);

struct BestResponse {
    Trajectory trajectory;
    double value = 0.0;
};

// Per-agent best response: backward value recursion, then forward extraction.
// Every argmin tie is broken by table order (first minimizer), so identical
// inputs give identical trajectories on every platform.
BestResponse best_response(const AgentSpec& agent, int horizon, const MultiplierVector& mu);

} // namespace aoc
