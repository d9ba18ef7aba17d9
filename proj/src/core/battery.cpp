#include "core/battery.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace aoc {

namespace {

// Per-field counter tags for the generation stream.
enum BatteryField : uint32_t { kSin = 0, kSmax = 1, kBeta = 2, kAlpha = 3 };

void check_params(const BatteryParams& p) {
    if (p.num_agents < 1) throw InvalidArgumentError("battery: N must be >= 1");
    if (p.horizon < 1) throw InvalidArgumentError("battery: T must be >= 1");
    if (p.u_max < 1) throw InvalidArgumentError("battery: u_max must be >= 1");
    if (p.s_in_lo > p.s_in_hi || p.s_max_lo > p.s_max_hi)
        throw InvalidArgumentError("battery: empty integer range");
    if (p.s_in_hi > p.s_max_lo)
        throw InvalidArgumentError("battery: s_in range must not exceed s_max range");
    if (p.alpha_lo > p.alpha_hi || p.beta_lo > p.beta_hi)
        throw InvalidArgumentError("battery: empty real range");
    if (p.alpha_lo < 0.0) throw InvalidArgumentError("battery: alpha must be nonnegative");
}

} // namespace

double target_profile(int t, int horizon, double scale, bool smooth) {
    if (t < 0 || t > horizon - 1)
        throw InvalidArgumentError("target profile defined for t = 0..T-1");
    const double wave = std::sin(M_PI * t / 12.0) + 1.0;
    return smooth ? scale * wave : scale * std::floor(wave);
}

OcInstance generate_battery(const BatteryParams& params) {
    check_params(params);
    const CounterRng rng(params.seed);
    const int N = params.num_agents;
    const int T = params.horizon;

    OcInstance instance;
    instance.num_agents = N;
    instance.horizon = T;

    instance.social.reserve(T + 2);
    for (int t = 0; t < T; ++t) {
        const double alpha = rng.uniform_real(params.alpha_lo, params.alpha_hi,
                                              RngStream::battery_gen, kAlpha, t);
        const double c = target_profile(t, T, params.target_scale, params.smooth_target);
        instance.social.push_back(SocialCostBlock::quadratic(alpha, c));
    }
    instance.social.push_back(SocialCostBlock::zero());     // f_T
    instance.social.push_back(SocialCostBlock::identity()); // terminal individual-cost block

    instance.agents.reserve(N);
    for (int i = 0; i < N; ++i) {
        const int s_in = static_cast<int>(rng.uniform_int(params.s_in_lo, params.s_in_hi,
                                                          RngStream::battery_gen, kSin, i));
        const int s_max = static_cast<int>(rng.uniform_int(params.s_max_lo, params.s_max_hi,
                                                           RngStream::battery_gen, kSmax, i));
        const double beta = rng.uniform_real(params.beta_lo, params.beta_hi,
                                             RngStream::battery_gen, kBeta, i);
        const int S = s_max - s_in + 1;

        AgentSpec agent;
        agent.state_labels.reserve(S);
        for (int s = s_in; s <= s_max; ++s) agent.state_labels.push_back(std::to_string(s));
        agent.control_labels.reserve(params.u_max + 1);
        for (int u = 0; u <= params.u_max; ++u) agent.control_labels.push_back(std::to_string(u));
        agent.initial_states = {0}; // state index of s_in

        agent.feasible.resize(T + 1);
        agent.next_state.resize(T);
        agent.contribution.resize(T + 1);
        agent.individual_cost.resize(T + 1);
        for (int t = 0; t <= T; ++t) {
            agent.feasible[t].resize(S);
            agent.contribution[t].resize(S);
            agent.individual_cost[t].resize(S);
            if (t < T) agent.next_state[t].resize(S);
            for (int idx = 0; idx < S; ++idx) {
                const int soc = s_in + idx;
                const int u_hi = std::min(params.u_max, s_max - soc);
                for (int u = 0; u <= u_hi; ++u) {
                    agent.feasible[t][idx].push_back(u);
                    if (t < T) agent.next_state[t][idx].push_back(idx + u);
                    agent.contribution[t][idx].push_back(t < T ? static_cast<double>(u) : 0.0);
                    const double ell =
                        (t == T) ? beta * static_cast<double>(s_max - soc) * (s_max - soc) : 0.0;
                    agent.individual_cost[t][idx].push_back(ell);
                }
            }
        }
        instance.agents.push_back(std::move(agent));
    }
    return instance;
}

CoarseBounds battery_coarse_bounds(const BatteryParams& params) {
    return {static_cast<double>(params.u_max), 2.0 * params.alpha_hi};
}

} // namespace aoc
