#include "core/exact.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "core/errors.hpp"
#include "core/social.hpp"

namespace aoc {

double count_total_combinations(const OcInstance& instance) {
    double product = 1.0;
    for (const AgentSpec& agent : instance.agents)
        product *= count_trajectories(agent, instance.horizon);
    return product;
}

namespace {

struct AgentChoices {
    std::vector<Trajectory> trajectories;
    std::vector<std::vector<double>> contribs;
};

AgentChoices agent_choices(const AgentSpec& agent, int horizon) {
    AgentChoices choices;
    choices.trajectories = enumerate_trajectories(agent, horizon);
    choices.contribs.reserve(choices.trajectories.size());
    for (const Trajectory& traj : choices.trajectories)
        choices.contribs.push_back(contribution_vector(agent, horizon, traj));
    return choices;
}

} // namespace

ExactResult enumerate_optimum(const OcInstance& instance, double cap) {
    require_valid(instance);
    const int N = instance.num_agents;
    const int M = instance.block_count();

    ExactResult result;
    result.combinations = count_total_combinations(instance);
    if (result.combinations > cap) {
        std::ostringstream msg;
        msg << "enumeration refused: " << result.combinations
            << " trajectory combinations exceed cap " << cap;
        throw CapExceededError(msg.str(), result.combinations);
    }

    std::vector<AgentChoices> choices;
    choices.reserve(N);
    for (const AgentSpec& agent : instance.agents)
        choices.push_back(agent_choices(agent, instance.horizon));

    // Depth-first product walk with prefix contribution sums; visiting order
    // is lexicographic, so keeping strict improvements yields the
    // lexicographically first minimizer.
    std::vector<int> pick(N, 0);
    std::vector<int> best_pick;
    double best_value = std::numeric_limits<double>::infinity();
    // prefix[a] = sum of contributions of agents 0..a-1
    std::vector<std::vector<double>> prefix(N + 1, std::vector<double>(M, 0.0));

    int level = 0;
    while (level >= 0) {
        if (pick[level] >= static_cast<int>(choices[level].trajectories.size())) {
            pick[level] = 0;
            --level;
            if (level >= 0) ++pick[level];
            continue;
        }
        const auto& g = choices[level].contribs[pick[level]];
        for (int t = 0; t < M; ++t) prefix[level + 1][t] = prefix[level][t] + g[t];
        if (level + 1 == N) {
            AggregateVector y;
            y.values.resize(M);
            for (int t = 0; t < M; ++t) y.values[t] = prefix[N][t] / N;
            const double value = evaluate_social(instance, y);
            if (value < best_value) {
                best_value = value;
                best_pick = pick;
            }
            ++pick[level];
        } else {
            ++level;
        }
    }

    result.value = best_value;
    result.solution.reserve(N);
    for (int i = 0; i < N; ++i)
        result.solution.push_back(choices[i].trajectories[best_pick[i]]);
    return result;
}

int MicpModel::var_index(int agent, int t, int state, int control) const {
    const int j = instance.agents[agent].feasible_position(t, state, control);
    if (j < 0) return -1;
    int index = var_offset[agent][t];
    for (int s = 0; s < state; ++s)
        index += static_cast<int>(instance.agents[agent].feasible[t][s].size());
    return index + j;
}

MicpModel build_micp(const OcInstance& instance) {
    require_valid(instance);
    MicpModel model;
    model.instance = instance;
    const int N = instance.num_agents;
    const int T = instance.horizon;
    model.var_offset.assign(N, std::vector<int>(T + 1, 0));
    for (int i = 0; i < N; ++i) {
        const AgentSpec& agent = instance.agents[i];
        for (int t = 0; t <= T; ++t) {
            model.var_offset[i][t] = static_cast<int>(model.variables.size());
            for (int s = 0; s < agent.num_states(); ++s)
                for (int u : agent.feasible[t][s])
                    model.variables.push_back({i, t, s, u});
        }
    }
    return model;
}

std::vector<double> trajectory_to_m(const MicpModel& model, std::span<const Trajectory> x) {
    const OcInstance& instance = model.instance;
    if (static_cast<int>(x.size()) != instance.num_agents)
        throw InvalidArgumentError("expected one trajectory per agent");
    std::vector<double> m(model.variables.size(), 0.0);
    for (int i = 0; i < instance.num_agents; ++i) {
        if (auto why = feasibility_violation(instance.agents[i], instance.horizon, x[i]))
            throw FeasibilityError("agent " + std::to_string(i) + ": " + *why);
        for (int t = 0; t <= instance.horizon; ++t)
            m[model.var_index(i, t, x[i].states[t], x[i].controls[t])] = 1.0;
    }
    return m;
}

namespace {

constexpr double kMicpTol = 1e-9;

void check_m_constraints(const MicpModel& model, std::span<const double> m) {
    const OcInstance& instance = model.instance;
    if (m.size() != model.variables.size())
        throw InvalidArgumentError("m vector length does not match variable count");

    std::vector<std::string> violations;
    auto report = [&](const std::string& msg) {
        if (violations.size() < 20) violations.push_back(msg);
    };

    // (i) integrality and (ii) nonnegativity, entrywise.
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] < -kMicpTol) report("(ii) m[" + std::to_string(v) + "] < 0");
        if (std::abs(m[v] - std::round(m[v])) > kMicpTol)
            report("(i) m[" + std::to_string(v) + "] not integral");
    }

    for (int i = 0; i < instance.num_agents; ++i) {
        const AgentSpec& agent = instance.agents[i];
        // (ii) one unit of mass per (agent, t).
        for (int t = 0; t <= instance.horizon; ++t) {
            double sum = 0.0;
            int v = model.var_offset[i][t];
            for (int s = 0; s < agent.num_states(); ++s)
                for (std::size_t j = 0; j < agent.feasible[t][s].size(); ++j) sum += m[v++];
            if (std::abs(sum - 1.0) > kMicpTol)
                report("(ii) simplex sum != 1 at agent " + std::to_string(i) + " t=" +
                       std::to_string(t));
        }
        // (iii) no mass on excluded initial states.
        for (int s = 0; s < agent.num_states(); ++s) {
            if (std::find(agent.initial_states.begin(), agent.initial_states.end(), s) !=
                agent.initial_states.end())
                continue;
            for (int u : agent.feasible[0][s]) {
                if (std::abs(m[model.var_index(i, 0, s, u)]) > kMicpTol)
                    report("(iii) mass on excluded initial state " + std::to_string(s) +
                           " of agent " + std::to_string(i));
            }
        }
        // (iv) flow conservation through the transition preimages.
        for (int theta = 1; theta <= instance.horizon; ++theta) {
            for (int s = 0; s < agent.num_states(); ++s) {
                double outflow = 0.0;
                for (int u : agent.feasible[theta][s])
                    outflow += m[model.var_index(i, theta, s, u)];
                double inflow = 0.0;
                for (int sp = 0; sp < agent.num_states(); ++sp) {
                    const auto& list = agent.feasible[theta - 1][sp];
                    for (std::size_t j = 0; j < list.size(); ++j)
                        if (agent.next_state[theta - 1][sp][j] == s)
                            inflow += m[model.var_index(i, theta - 1, sp, list[j])];
                }
                if (std::abs(outflow - inflow) > kMicpTol)
                    report("(iv) flow imbalance at agent " + std::to_string(i) + " t=" +
                           std::to_string(theta) + " state=" + std::to_string(s));
            }
        }
    }

    if (!violations.empty()) {
        std::string msg = "m violates MICP constraints:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw FeasibilityError(msg);
    }
}

} // namespace

std::vector<Trajectory> m_to_trajectory(const MicpModel& model, std::span<const double> m) {
    check_m_constraints(model, m);
    const OcInstance& instance = model.instance;
    std::vector<Trajectory> x(instance.num_agents);
    for (int i = 0; i < instance.num_agents; ++i) {
        const AgentSpec& agent = instance.agents[i];
        Trajectory traj;
        traj.states.resize(instance.horizon + 1);
        traj.controls.resize(instance.horizon + 1);
        for (int t = 0; t <= instance.horizon; ++t) {
            int v = model.var_offset[i][t];
            bool found = false;
            for (int s = 0; s < agent.num_states() && !found; ++s) {
                for (int u : agent.feasible[t][s]) {
                    if (std::round(m[v++]) == 1.0) {
                        traj.states[t] = s;
                        traj.controls[t] = u;
                        found = true;
                        break;
                    }
                }
            }
        }
        if (auto why = feasibility_violation(agent, instance.horizon, traj))
            throw FeasibilityError("agent " + std::to_string(i) +
                                   ": extracted trajectory infeasible: " + *why);
        x[i] = std::move(traj);
    }
    return x;
}

double micp_objective(const MicpModel& model, std::span<const double> m) {
    const OcInstance& instance = model.instance;
    if (m.size() != model.variables.size())
        throw InvalidArgumentError("m vector length does not match variable count");
    const int N = instance.num_agents;
    const int T = instance.horizon;

    double total = 0.0;
    // Blocks 0..T act on the h-weighted linear forms.
    for (int t = 0; t <= T; ++t) {
        double linear_form = 0.0;
        for (int i = 0; i < N; ++i) {
            const AgentSpec& agent = instance.agents[i];
            int v = model.var_offset[i][t];
            for (int s = 0; s < agent.num_states(); ++s)
                for (std::size_t j = 0; j < agent.feasible[t][s].size(); ++j)
                    linear_form += agent.contribution[t][s][j] * m[v++];
        }
        total += block_value(instance.social[t], linear_form / N);
    }
    // Terminal block: identity on the averaged individual-cost mass.
    double cost_form = 0.0;
    for (int i = 0; i < N; ++i) {
        const AgentSpec& agent = instance.agents[i];
        for (int t = 0; t <= T; ++t) {
            int v = model.var_offset[i][t];
            for (int s = 0; s < agent.num_states(); ++s)
                for (std::size_t j = 0; j < agent.feasible[t][s].size(); ++j)
                    cost_form += agent.individual_cost[t][s][j] * m[v++];
        }
    }
    total += block_value(instance.social[T + 1], cost_form / N);
    return total;
}

namespace {

// Per-agent integer-feasible assignments, found by walking the constraint
// system: (ii)+(iii) force one initial pair, (iv) chains each next pair.
// Each assignment is summarized by its variable indices.
void collect_assignments(const MicpModel& model, int agent_index, int t, int s,
                         std::vector<int>& vars, std::vector<std::vector<int>>& out) {
    const AgentSpec& agent = model.instance.agents[agent_index];
    const auto& list = agent.feasible[t][s];
    for (std::size_t j = 0; j < list.size(); ++j) {
        vars.push_back(model.var_index(agent_index, t, s, list[j]));
        if (t == model.instance.horizon) {
            out.push_back(vars);
        } else {
            collect_assignments(model, agent_index, t + 1,
                                agent.next_state[t][s][j], vars, out);
        }
        vars.pop_back();
    }
}

} // namespace

double micp_enumerate_minimum(const MicpModel& model, double cap, std::vector<double>* best_m) {
    const OcInstance& instance = model.instance;
    const int N = instance.num_agents;
    const int M = instance.block_count();

    const double combos = count_total_combinations(instance);
    if (combos > cap) {
        std::ostringstream msg;
        msg << "MICP enumeration refused: " << combos << " assignments exceed cap " << cap;
        throw CapExceededError(msg.str(), combos);
    }

    // Per-agent assignments and, per assignment, its linear-form loads:
    // entry t<=T is the h mass, entry T+1 the individual-cost mass.
    std::vector<std::vector<std::vector<int>>> assignments(N);
    std::vector<std::vector<std::vector<double>>> loads(N);
    for (int i = 0; i < N; ++i) {
        std::vector<int> scratch;
        for (int s0 : instance.agents[i].initial_states)
            collect_assignments(model, i, 0, s0, scratch, assignments[i]);
        loads[i].reserve(assignments[i].size());
        for (const auto& vars : assignments[i]) {
            std::vector<double> load(M, 0.0);
            for (int v : vars) {
                const MicpVariable& var = model.variables[v];
                const AgentSpec& agent = instance.agents[i];
                const int j = agent.feasible_position(var.t, var.state, var.control);
                load[var.t] += agent.contribution[var.t][var.state][j];
                load[M - 1] += agent.individual_cost[var.t][var.state][j];
            }
            loads[i].push_back(std::move(load));
        }
    }

    std::vector<int> pick(N, 0);
    std::vector<int> best_pick;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> prefix(N + 1, std::vector<double>(M, 0.0));
    int level = 0;
    while (level >= 0) {
        if (pick[level] >= static_cast<int>(assignments[level].size())) {
            pick[level] = 0;
            --level;
            if (level >= 0) ++pick[level];
            continue;
        }
        const auto& load = loads[level][pick[level]];
        for (int t = 0; t < M; ++t) prefix[level + 1][t] = prefix[level][t] + load[t];
        if (level + 1 == N) {
            double value = 0.0;
            for (int t = 0; t < M; ++t)
                value += block_value(instance.social[t], prefix[N][t] / N);
            if (value < best_value) {
                best_value = value;
                best_pick = pick;
            }
            ++pick[level];
        } else {
            ++level;
        }
    }

    if (best_m) {
        best_m->assign(model.variables.size(), 0.0);
        for (int i = 0; i < N; ++i)
            for (int v : assignments[i][best_pick[i]]) (*best_m)[v] = 1.0;
    }
    return best_value;
}

ObjectiveExpansion expand_objective(const MicpModel& model) {
    const OcInstance& instance = model.instance;
    const int N = instance.num_agents;
    const int T = instance.horizon;

    ObjectiveExpansion expansion;
    expansion.linear.assign(model.variables.size(), 0.0);
    std::map<std::pair<int, int>, double> quad;

    for (int t = 0; t <= T; ++t) {
        const SocialCostBlock& block = instance.social[t];
        if (block.kind == SocialCostBlock::Kind::zero) continue;

        // Support of the block-t linear form; zero-h variables drop out.
        std::vector<std::pair<int, double>> support; // (var, h/N)
        for (int i = 0; i < N; ++i) {
            const AgentSpec& agent = instance.agents[i];
            int v = model.var_offset[i][t];
            for (int s = 0; s < agent.num_states(); ++s)
                for (std::size_t j = 0; j < agent.feasible[t][s].size(); ++j, ++v) {
                    const double h = agent.contribution[t][s][j];
                    if (h != 0.0) support.emplace_back(v, h / N);
                }
        }

        switch (block.kind) {
            case SocialCostBlock::Kind::quadratic: {
                expansion.constant += block.alpha * block.target * block.target;
                for (const auto& [v, hv] : support)
                    expansion.linear[v] += -2.0 * block.alpha * block.target * hv;
                for (std::size_t a = 0; a < support.size(); ++a)
                    for (std::size_t b = a; b < support.size(); ++b) {
                        const double coef = (a == b ? 1.0 : 2.0) * block.alpha *
                                            support[a].second * support[b].second;
                        quad[{support[a].first, support[b].first}] += coef;
                    }
                break;
            }
            case SocialCostBlock::Kind::linear:
                for (const auto& [v, hv] : support) expansion.linear[v] += block.weight * hv;
                break;
            case SocialCostBlock::Kind::identity:
                for (const auto& [v, hv] : support) expansion.linear[v] += hv;
                break;
            case SocialCostBlock::Kind::zero:
                break;
        }
    }

    // Identity terminal block over the averaged individual costs.
    for (std::size_t v = 0; v < model.variables.size(); ++v) {
        const MicpVariable& var = model.variables[v];
        const AgentSpec& agent = instance.agents[var.agent];
        const int j = agent.feasible_position(var.t, var.state, var.control);
        const double ell = agent.individual_cost[var.t][var.state][j];
        if (ell != 0.0) expansion.linear[v] += ell / N;
    }

    expansion.quadratic.assign(quad.begin(), quad.end());
    return expansion;
}

namespace {

std::string format_double(double v) {
    char buffer[32];
    const auto out = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, out.ptr);
}

std::string var_name(const MicpVariable& v) {
    return "m_" + std::to_string(v.agent) + "_" + std::to_string(v.t) + "_" +
           std::to_string(v.state) + "_" + std::to_string(v.control);
}

// Wraps the token stream at a fixed width; LP readers accept breaks
// between tokens.
class LpWriter {
public:
    explicit LpWriter(std::string& out) : out_(out) {}

    void token(const std::string& tok) {
        if (column_ > 0 && column_ + tok.size() + 1 > 200) {
            out_ += "\n ";
            column_ = 1;
        } else if (column_ > 0) {
            out_ += " ";
            ++column_;
        }
        out_ += tok;
        column_ += tok.size();
    }

    void line_break() {
        out_ += "\n";
        column_ = 0;
    }

private:
    std::string& out_;
    std::size_t column_ = 0;
};

void write_term(LpWriter& writer, bool& first, double coef, const std::string& body) {
    if (coef == 0.0) return;
    if (first) {
        if (coef < 0.0) writer.token("-");
        first = false;
    } else {
        writer.token(coef < 0.0 ? "-" : "+");
    }
    const double mag = std::abs(coef);
    if (mag != 1.0 || body.empty()) writer.token(format_double(mag));
    if (!body.empty()) writer.token(body);
}

} // namespace

std::string export_lp(const MicpModel& model) {
    const OcInstance& instance = model.instance;
    const ObjectiveExpansion objective = expand_objective(model);

    std::string text;
    text += "\\ aggregative optimal control MICP export\n";
    text += "\\ N=" + std::to_string(instance.num_agents) +
            " T=" + std::to_string(instance.horizon) +
            " d(m)=" + std::to_string(model.var_count()) + "\n";
    text += "Minimize\n";

    LpWriter writer(text);
    writer.token(" obj:");
    bool first = true;
    for (std::size_t v = 0; v < objective.linear.size(); ++v)
        write_term(writer, first, objective.linear[v], var_name(model.variables[v]));
    if (!objective.quadratic.empty()) {
        if (first) {
            first = false;
        } else {
            writer.token("+");
        }
        writer.token("[");
        bool quad_first = true;
        for (const auto& [pair, coef] : objective.quadratic) {
            const auto& [v, w] = pair;
            // The bracketed section is halved by convention, so coefficients
            // are doubled here.
            if (v == w)
                write_term(writer, quad_first, 2.0 * coef, var_name(model.variables[v]) + " ^ 2");
            else
                write_term(writer, quad_first, 2.0 * coef,
                           var_name(model.variables[v]) + " * " + var_name(model.variables[w]));
        }
        writer.token("]");
        writer.token("/");
        writer.token("2");
    }
    if (objective.constant != 0.0)
        write_term(writer, first, objective.constant, "");
    writer.line_break();

    text += "Subject To\n";
    for (int i = 0; i < instance.num_agents; ++i) {
        const AgentSpec& agent = instance.agents[i];
        for (int t = 0; t <= instance.horizon; ++t) {
            LpWriter row(text);
            row.token(" simplex_" + std::to_string(i) + "_" + std::to_string(t) + ":");
            bool row_first = true;
            int v = model.var_offset[i][t];
            for (int s = 0; s < agent.num_states(); ++s)
                for (std::size_t j = 0; j < agent.feasible[t][s].size(); ++j)
                    write_term(row, row_first, 1.0, var_name(model.variables[v++]));
            row.token("=");
            row.token("1");
            row.line_break();
        }
        for (int s = 0; s < agent.num_states(); ++s) {
            if (std::find(agent.initial_states.begin(), agent.initial_states.end(), s) !=
                agent.initial_states.end())
                continue;
            for (int u : agent.feasible[0][s]) {
                LpWriter row(text);
                row.token(" init_" + std::to_string(i) + "_" + std::to_string(s) + "_" +
                          std::to_string(u) + ":");
                bool row_first = true;
                write_term(row, row_first, 1.0,
                           var_name(model.variables[model.var_index(i, 0, s, u)]));
                row.token("=");
                row.token("0");
                row.line_break();
            }
        }
        for (int theta = 1; theta <= instance.horizon; ++theta) {
            for (int s = 0; s < agent.num_states(); ++s) {
                LpWriter row(text);
                row.token(" flow_" + std::to_string(i) + "_" + std::to_string(theta) + "_" +
                          std::to_string(s) + ":");
                bool row_first = true;
                for (int u : agent.feasible[theta][s])
                    write_term(row, row_first, 1.0,
                               var_name(model.variables[model.var_index(i, theta, s, u)]));
                for (int sp = 0; sp < agent.num_states(); ++sp) {
                    const auto& list = agent.feasible[theta - 1][sp];
                    for (std::size_t j = 0; j < list.size(); ++j)
                        if (agent.next_state[theta - 1][sp][j] == s)
                            write_term(row, row_first, -1.0,
                                       var_name(model.variables[model.var_index(
                                           i, theta - 1, sp, list[j])]));
                }
                row.token("=");
                row.token("0");
                row.line_break();
            }
        }
    }

    text += "Bounds\n";
    for (const MicpVariable& v : model.variables)
        text += " 0 <= " + var_name(v) + " <= 1\n";

    text += "Generals\n";
    {
        LpWriter row(text);
        row.token("");
        for (const MicpVariable& v : model.variables) row.token(var_name(v));
        row.line_break();
    }
    text += "End\n";
    return text;
}

LpSummary parse_lp_summary(const std::string& text) {
    LpSummary summary;
    std::istringstream in(text);
    std::string line;
    enum class Section { none, objective, constraints, bounds, generals } section =
        Section::none;
    while (std::getline(in, line)) {
        if (line.rfind("\\", 0) == 0) continue;
        if (line == "Minimize") { section = Section::objective; continue; }
        if (line == "Subject To") { section = Section::constraints; continue; }
        if (line == "Bounds") { section = Section::bounds; continue; }
        if (line == "Generals") { section = Section::generals; continue; }
        if (line == "End") break;
        switch (section) {
            case Section::objective:
                for (std::size_t pos = 0; (pos = line.find('^', pos)) != std::string::npos; ++pos)
                    ++summary.quadratic_terms;
                for (std::size_t pos = 0; (pos = line.find('*', pos)) != std::string::npos; ++pos)
                    ++summary.quadratic_terms;
                break;
            case Section::constraints:
                if (line.find(':') != std::string::npos) ++summary.constraints;
                break;
            case Section::bounds:
                if (line.find("<=") != std::string::npos) ++summary.variables;
                break;
            case Section::generals: {
                std::istringstream tokens(line);
                std::string tok;
                while (tokens >> tok) ++summary.integer_variables;
                break;
            }
            case Section::none:
                break;
        }
    }
    return summary;
}

} // namespace aoc
