#include "core/instance.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace aoc {

int AgentSpec::feasible_position(int t, int s, int u) const {
    const auto& list = feasible[t][s];
    for (int j = 0; j < static_cast<int>(list.size()); ++j)
        if (list[j] == u) return j;
    return -1;
}

namespace {

void check_table_shape(const AgentSpec& agent, int horizon, int agent_index,
                       std::vector<ValidationIssue>& issues) {
    const int S = agent.num_states();
    auto shape_issue = [&](const std::string& msg) {
        issues.push_back({agent_index, -1, -1, -1, msg});
    };
    if (static_cast<int>(agent.feasible.size()) != horizon + 1)
        shape_issue("feasible table must cover t = 0..T");
    if (static_cast<int>(agent.next_state.size()) != horizon)
        shape_issue("transition table must cover t = 0..T-1");
    if (static_cast<int>(agent.contribution.size()) != horizon + 1)
        shape_issue("contribution table must cover t = 0..T");
    if (static_cast<int>(agent.individual_cost.size()) != horizon + 1)
        shape_issue("individual-cost table must cover t = 0..T");
    for (std::size_t t = 0; t < agent.feasible.size(); ++t)
        if (static_cast<int>(agent.feasible[t].size()) != S)
            shape_issue("feasible table at t=" + std::to_string(t) + " must have one row per state");
    auto check_aligned = [&](const auto& table, const char* name) {
        for (std::size_t t = 0; t < table.size() && t < agent.feasible.size(); ++t) {
            if (table[t].size() != agent.feasible[t].size()) {
                shape_issue(std::string(name) + " rows at t=" + std::to_string(t) +
                            " must align with feasible");
                continue;
            }
            for (std::size_t s = 0; s < table[t].size(); ++s)
                if (table[t][s].size() != agent.feasible[t][s].size())
                    issues.push_back({agent_index, static_cast<int>(t), static_cast<int>(s), -1,
                                      std::string(name) + " entries must align with feasible controls"});
        }
    };
    check_aligned(agent.next_state, "transition");
    check_aligned(agent.contribution, "contribution");
    check_aligned(agent.individual_cost, "individual cost");
}

bool tables_well_shaped(const AgentSpec& agent, int horizon) {
    std::vector<ValidationIssue> issues;
    check_table_shape(agent, horizon, 0, issues);
    return issues.empty();
}

} // namespace

std::vector<ValidationIssue> validate_instance(const OcInstance& instance) {
    std::vector<ValidationIssue> issues;
    auto instance_issue = [&](const std::string& msg) {
        issues.push_back({-1, -1, -1, -1, msg});
    };

    if (instance.num_agents < 1) instance_issue("N must be >= 1");
    if (instance.horizon < 1) instance_issue("T must be >= 1");
    if (static_cast<int>(instance.agents.size()) != instance.num_agents)
        instance_issue("agent list length must equal N");
    if (static_cast<int>(instance.social.size()) != instance.block_count())
        instance_issue("social block list must have T+2 entries");

    for (std::size_t t = 0; t < instance.social.size(); ++t) {
        const auto& block = instance.social[t];
        if (block.kind == SocialCostBlock::Kind::quadratic && block.alpha < 0.0)
            issues.push_back({-1, static_cast<int>(t), -1, -1,
                              "quadratic social block requires alpha >= 0"});
        if (!std::isfinite(block.alpha) || !std::isfinite(block.target) ||
            !std::isfinite(block.weight))
            issues.push_back({-1, static_cast<int>(t), -1, -1,
                              "social block parameters must be finite"});
    }
    if (!instance.social.empty() &&
        static_cast<int>(instance.social.size()) == instance.block_count() &&
        instance.social.back().kind != SocialCostBlock::Kind::identity)
        instance_issue("terminal social block (t = T+1) must be the identity block");

    const int T = instance.horizon;
    for (int i = 0; i < static_cast<int>(instance.agents.size()); ++i) {
        const AgentSpec& agent = instance.agents[i];
        const int S = agent.num_states();
        const int U = agent.num_controls();

        if (S == 0) issues.push_back({i, -1, -1, -1, "state set is empty"});
        if (U == 0) issues.push_back({i, -1, -1, -1, "control set is empty"});
        if (agent.initial_states.empty())
            issues.push_back({i, -1, -1, -1, "initial state set is empty (Assumption I)"});
        for (std::size_t k = 0; k < agent.initial_states.size(); ++k) {
            const int s = agent.initial_states[k];
            if (s < 0 || s >= S)
                issues.push_back({i, -1, s, -1, "initial state index out of range"});
            if (k > 0 && agent.initial_states[k] <= agent.initial_states[k - 1])
                issues.push_back({i, -1, s, -1, "initial states must be strictly ascending"});
        }

        check_table_shape(agent, T, i, issues);
        if (!tables_well_shaped(agent, T)) continue; // index checks below need shapes

        for (int t = 0; t <= T; ++t) {
            for (int s = 0; s < S; ++s) {
                const auto& list = agent.feasible[t][s];
                if (list.empty())
                    issues.push_back({i, t, s, -1, "no feasible control (Assumption I)"});
                for (std::size_t j = 0; j < list.size(); ++j) {
                    const int u = list[j];
                    if (u < 0 || u >= U) {
                        issues.push_back({i, t, s, u, "control index out of range"});
                        continue;
                    }
                    if (j > 0 && list[j] <= list[j - 1])
                        issues.push_back({i, t, s, u, "feasible controls must be strictly ascending"});
                    if (t < T) {
                        const int ns = agent.next_state[t][s][j];
                        if (ns < 0 || ns >= S)
                            issues.push_back({i, t, s, u, "transition target is not a state"});
                    }
                    if (!std::isfinite(agent.contribution[t][s][j]))
                        issues.push_back({i, t, s, u, "contribution value must be finite"});
                    if (!std::isfinite(agent.individual_cost[t][s][j]))
                        issues.push_back({i, t, s, u, "individual cost must be finite"});
                }
            }
        }
    }
    return issues;
}

std::string format_issues(const std::vector<ValidationIssue>& issues) {
    std::ostringstream out;
    for (const auto& v : issues) {
        out << "violation:";
        if (v.agent >= 0) out << " agent=" << v.agent;
        if (v.t >= 0) out << " t=" << v.t;
        if (v.state >= 0) out << " state=" << v.state;
        if (v.control >= 0) out << " control=" << v.control;
        out << " " << v.message << "\n";
    }
    return out.str();
}

void require_valid(const OcInstance& instance) {
    auto issues = validate_instance(instance);
    if (!issues.empty())
        throw ValidationError("invalid instance:\n" + format_issues(issues));
}

std::optional<std::string> feasibility_violation(const AgentSpec& agent, int horizon,
                                                 const Trajectory& traj) {
    if (static_cast<int>(traj.states.size()) != horizon + 1 ||
        static_cast<int>(traj.controls.size()) != horizon + 1)
        throw InvalidArgumentError("trajectory must have T+1 states and T+1 controls");

    bool initial_ok = false;
    for (int s0 : agent.initial_states) initial_ok |= (s0 == traj.states[0]);
    if (!initial_ok) return "state at t=0 is not an initial state";

    for (int t = 0; t <= horizon; ++t) {
        const int s = traj.states[t];
        const int u = traj.controls[t];
        if (s < 0 || s >= agent.num_states()) return "state index out of range at t=" + std::to_string(t);
        const int j = agent.feasible_position(t, s, u);
        if (j < 0) return "control infeasible at t=" + std::to_string(t);
        if (t < horizon && traj.states[t + 1] != agent.next_state[t][s][j])
            return "transition mismatch at t=" + std::to_string(t);
    }
    return std::nullopt;
}

bool is_feasible(const AgentSpec& agent, int horizon, const Trajectory& traj) {
    return !feasibility_violation(agent, horizon, traj).has_value();
}

std::vector<double> contribution_vector(const AgentSpec& agent, int horizon,
                                        const Trajectory& traj) {
    if (auto why = feasibility_violation(agent, horizon, traj))
        throw FeasibilityError("infeasible trajectory: " + *why);
    std::vector<double> g(horizon + 2, 0.0);
    double individual_sum = 0.0;
    for (int t = 0; t <= horizon; ++t) {
        const int s = traj.states[t];
        const int j = agent.feasible_position(t, s, traj.controls[t]);
        g[t] = agent.contribution[t][s][j];
        individual_sum += agent.individual_cost[t][s][j];
    }
    g[horizon + 1] = individual_sum;
    return g;
}

double evaluate_oc_cost(const OcInstance& instance, std::span<const Trajectory> x) {
    const int N = instance.num_agents;
    const int T = instance.horizon;
    if (static_cast<int>(x.size()) != N)
        throw InvalidArgumentError("expected one trajectory per agent");

    double individual = 0.0;
    std::vector<double> h_avg(T + 1, 0.0);
    for (int i = 0; i < N; ++i) {
        const AgentSpec& agent = instance.agents[i];
        if (auto why = feasibility_violation(agent, T, x[i]))
            throw FeasibilityError("agent " + std::to_string(i) + ": " + *why);
        for (int t = 0; t <= T; ++t) {
            const int s = x[i].states[t];
            const int j = agent.feasible_position(t, s, x[i].controls[t]);
            h_avg[t] += agent.contribution[t][s][j];
            individual += agent.individual_cost[t][s][j];
        }
    }

    double total = individual / N;
    for (int t = 0; t <= T; ++t) {
        const double y = h_avg[t] / N;
        const SocialCostBlock& f = instance.social[t];
        switch (f.kind) {
            case SocialCostBlock::Kind::quadratic:
                total += f.alpha * (y - f.target) * (y - f.target);
                break;
            case SocialCostBlock::Kind::linear:
                total += f.weight * y;
                break;
            case SocialCostBlock::Kind::identity:
                total += y;
                break;
            case SocialCostBlock::Kind::zero:
                break;
        }
    }
    return total;
}

Trajectory default_trajectory(const AgentSpec& agent, int horizon) {
    Trajectory traj;
    traj.states.resize(horizon + 1);
    traj.controls.resize(horizon + 1);
    int s = agent.initial_states.front();
    for (int t = 0; t <= horizon; ++t) {
        traj.states[t] = s;
        traj.controls[t] = agent.feasible[t][s].front();
        if (t < horizon) s = agent.next_state[t][s][0];
    }
    return traj;
}

std::vector<Trajectory> default_trajectories(const OcInstance& instance) {
    std::vector<Trajectory> x;
    x.reserve(instance.agents.size());
    for (const AgentSpec& agent : instance.agents)
        x.push_back(default_trajectory(agent, instance.horizon));
    return x;
}

namespace {

void enumerate_from(const AgentSpec& agent, int horizon, int t, Trajectory& partial,
                    std::vector<Trajectory>& out) {
    const int s = partial.states[t];
    const auto& controls = agent.feasible[t][s];
    for (std::size_t j = 0; j < controls.size(); ++j) {
        partial.controls[t] = controls[j];
        if (t == horizon) {
            out.push_back(partial);
        } else {
            partial.states[t + 1] = agent.next_state[t][s][j];
            enumerate_from(agent, horizon, t + 1, partial, out);
        }
    }
}

} // namespace

std::vector<Trajectory> enumerate_trajectories(const AgentSpec& agent, int horizon) {
    std::vector<Trajectory> out;
    Trajectory partial;
    partial.states.resize(horizon + 1);
    partial.controls.resize(horizon + 1);
    for (int s0 : agent.initial_states) {
        partial.states[0] = s0;
        enumerate_from(agent, horizon, 0, partial, out);
    }
    return out;
}

double count_trajectories(const AgentSpec& agent, int horizon) {
    const int S = agent.num_states();
    std::vector<double> reach(S, 0.0);
    for (int s0 : agent.initial_states) reach[s0] += 1.0;
    for (int t = 0; t < horizon; ++t) {
        std::vector<double> next(S, 0.0);
        for (int s = 0; s < S; ++s) {
            if (reach[s] == 0.0) continue;
            const auto& controls = agent.feasible[t][s];
            for (std::size_t j = 0; j < controls.size(); ++j)
                next[agent.next_state[t][s][j]] += reach[s];
        }
        reach.swap(next);
    }
    double total = 0.0;
    for (int s = 0; s < S; ++s)
        total += reach[s] * static_cast<double>(agent.feasible[horizon][s].size());
    return total;
}

} // namespace aoc
