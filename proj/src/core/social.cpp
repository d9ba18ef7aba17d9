#include "core/social.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace aoc {

double block_value(const SocialCostBlock& block, double y) {
    switch (block.kind) {
        case SocialCostBlock::Kind::quadratic:
            return block.alpha * (y - block.target) * (y - block.target);
        case SocialCostBlock::Kind::linear:
            return block.weight * y;
        case SocialCostBlock::Kind::identity:
            return y;
        case SocialCostBlock::Kind::zero:
            return 0.0;
    }
    return 0.0;
}

double block_gradient(const SocialCostBlock& block, double y) {
    switch (block.kind) {
        case SocialCostBlock::Kind::quadratic:
            return 2.0 * block.alpha * (y - block.target);
        case SocialCostBlock::Kind::linear:
            return block.weight;
        case SocialCostBlock::Kind::identity:
            return 1.0;
        case SocialCostBlock::Kind::zero:
            return 0.0;
    }
    return 0.0;
}

AggregateVector aggregate(const OcInstance& instance, std::span<const Trajectory> x) {
    const int N = instance.num_agents;
    const int M = instance.block_count();
    if (static_cast<int>(x.size()) != N)
        throw InvalidArgumentError("expected " + std::to_string(N) + " trajectories, got " +
                                   std::to_string(x.size()));
    AggregateVector y;
    y.values.assign(M, 0.0);
    for (int i = 0; i < N; ++i) {
        std::vector<double> g;
        try {
            g = contribution_vector(instance.agents[i], instance.horizon, x[i]);
        } catch (const FeasibilityError& e) {
            throw FeasibilityError("agent " + std::to_string(i) + ": " + e.what());
        }
        for (int t = 0; t < M; ++t) y.values[t] += g[t];
    }
    for (int t = 0; t < M; ++t) y.values[t] /= N;
    return y;
}

double evaluate_social(const OcInstance& instance, const AggregateVector& y) {
    if (y.values.size() != instance.social.size())
        throw InvalidArgumentError("aggregate length does not match block count");
    double total = 0.0;
    for (std::size_t t = 0; t < instance.social.size(); ++t)
        total += block_value(instance.social[t], y.values[t]);
    return total;
}

MultiplierVector social_gradient(const OcInstance& instance, const AggregateVector& y) {
    if (y.values.size() != instance.social.size())
        throw InvalidArgumentError("aggregate length does not match block count");
    MultiplierVector mu;
    mu.values.resize(instance.social.size());
    for (std::size_t t = 0; t < instance.social.size(); ++t)
        mu.values[t] = block_gradient(instance.social[t], y.values[t]);
    return mu;
}

double evaluate_cost(const OcInstance& instance, std::span<const Trajectory> x) {
    return evaluate_social(instance, aggregate(instance, x));
}

namespace {

// Reachable (state, feasible-position) pairs give the exact range of h at
// each time step; Assumption I guarantees every reachable prefix extends
// to a full trajectory, so forward reachability is sufficient.
std::pair<double, double> step_contribution_range(const AgentSpec& agent, int horizon, int t) {
    const int S = agent.num_states();
    std::vector<char> reach(S, 0);
    for (int s0 : agent.initial_states) reach[s0] = 1;
    for (int step = 0; step < t; ++step) {
        std::vector<char> next(S, 0);
        for (int s = 0; s < S; ++s) {
            if (!reach[s]) continue;
            for (std::size_t j = 0; j < agent.feasible[step][s].size(); ++j)
                next[agent.next_state[step][s][j]] = 1;
        }
        reach.swap(next);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < S; ++s) {
        if (!reach[s]) continue;
        for (double h : agent.contribution[t][s]) {
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
    }
    if (!(lo <= hi))
        throw ValidationError("agent has no reachable state at t=" + std::to_string(t) +
                              " (violates Assumption I)");
    (void)horizon;
    return {lo, hi};
}

// Min / max of the additive individual-cost sum by backward induction.
std::pair<double, double> cost_sum_range(const AgentSpec& agent, int horizon) {
    const int S = agent.num_states();
    std::vector<double> lo(S, 0.0), hi(S, 0.0);
    for (int t = horizon; t >= 0; --t) {
        std::vector<double> next_lo(S), next_hi(S);
        for (int s = 0; s < S; ++s) {
            double best_lo = std::numeric_limits<double>::infinity();
            double best_hi = -std::numeric_limits<double>::infinity();
            const auto& controls = agent.feasible[t][s];
            for (std::size_t j = 0; j < controls.size(); ++j) {
                const double step_cost = agent.individual_cost[t][s][j];
                double tail_lo = 0.0, tail_hi = 0.0;
                if (t < horizon) {
                    const int ns = agent.next_state[t][s][j];
                    tail_lo = lo[ns];
                    tail_hi = hi[ns];
                }
                best_lo = std::min(best_lo, step_cost + tail_lo);
                best_hi = std::max(best_hi, step_cost + tail_hi);
            }
            if (controls.empty())
                throw ValidationError("empty feasible set (violates Assumption I)");
            next_lo[s] = best_lo;
            next_hi[s] = best_hi;
        }
        lo.swap(next_lo);
        hi.swap(next_hi);
    }
    double best_lo = std::numeric_limits<double>::infinity();
    double best_hi = -std::numeric_limits<double>::infinity();
    for (int s0 : agent.initial_states) {
        best_lo = std::min(best_lo, lo[s0]);
        best_hi = std::max(best_hi, hi[s0]);
    }
    return {best_lo, best_hi};
}

} // namespace

std::pair<double, double> contribution_range(const AgentSpec& agent, int horizon, int block) {
    if (block < 0 || block > horizon + 1)
        throw InvalidArgumentError("block index out of range");
    if (block <= horizon) return step_contribution_range(agent, horizon, block);
    return cost_sum_range(agent, horizon);
}

double assemble_c0(const BoundReport& report) {
    const int M = static_cast<int>(report.lipschitz.size());
    double c0 = 0.0;
    for (int t = 0; t < M; ++t) {
        double dmax = 0.0;
        for (const auto& row : report.diameters) dmax = std::max(dmax, row[t]);
        c0 += report.lipschitz[t] * dmax;
    }
    return c0;
}

double assemble_c1(const BoundReport& report, int num_agents) {
    const int M = static_cast<int>(report.grad_lipschitz.size());
    double c1 = 0.0;
    for (int t = 0; t < M; ++t) {
        double sum_sq = 0.0;
        for (const auto& row : report.diameters) sum_sq += row[t] * row[t];
        c1 += report.grad_lipschitz[t] * sum_sq;
    }
    return c1 / num_agents;
}

BoundReport compute_constants(const OcInstance& instance,
                              const std::optional<CoarseBounds>& coarse) {
    const int N = instance.num_agents;
    const int M = instance.block_count();
    const int T = instance.horizon;

    BoundReport report;
    report.diameters.assign(N, std::vector<double>(M, 0.0));
    report.lipschitz.assign(M, 0.0);
    report.grad_lipschitz.assign(M, 0.0);
    report.block_lo.assign(M, 0.0);
    report.block_hi.assign(M, 0.0);

    for (int t = 0; t < M; ++t) {
        double sum_lo = 0.0, sum_hi = 0.0;
        for (int i = 0; i < N; ++i) {
            auto [lo, hi] = contribution_range(instance.agents[i], T, t);
            report.diameters[i][t] = hi - lo;
            sum_lo += lo;
            sum_hi += hi;
        }
        // Enclosing interval of conv(Y_t); conv(Y_t) itself is never built.
        report.block_lo[t] = sum_lo / N;
        report.block_hi[t] = sum_hi / N;

        const SocialCostBlock& block = instance.social[t];
        switch (block.kind) {
            case SocialCostBlock::Kind::quadratic:
                report.lipschitz[t] = 2.0 * block.alpha *
                                      std::max(std::abs(report.block_lo[t] - block.target),
                                               std::abs(report.block_hi[t] - block.target));
                report.grad_lipschitz[t] = 2.0 * block.alpha;
                break;
            case SocialCostBlock::Kind::linear:
                report.lipschitz[t] = std::abs(block.weight);
                report.grad_lipschitz[t] = 0.0;
                break;
            case SocialCostBlock::Kind::identity:
                report.lipschitz[t] = 1.0;
                report.grad_lipschitz[t] = 0.0;
                break;
            case SocialCostBlock::Kind::zero:
                break;
        }
    }

    if (coarse) {
        report.coarse = true;
        for (int t = 0; t < M; ++t) {
            if (instance.social[t].kind != SocialCostBlock::Kind::quadratic) continue;
            report.grad_lipschitz[t] = coarse->grad_lipschitz;
            for (int i = 0; i < N; ++i) report.diameters[i][t] = coarse->diameter;
        }
    }

    report.c0 = assemble_c0(report);
    report.c1 = assemble_c1(report, N);
    report.gap_bound = report.c1 / (2.0 * N);
    return report;
}

} // namespace aoc
