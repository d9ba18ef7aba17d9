#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aoc {

// One agent's feasible state-control sequence: states[t] and controls[t]
// for t = 0..T, as indices into the owning AgentSpec's label lists.
// Dynamics stop at T-1; the control at T enters costs/contributions only.
struct Trajectory {
    std::vector<int> states;
    std::vector<int> controls;

    bool operator==(const Trajectory&) const = default;
};

// Finite-state agent description. All tables are dense over (t, state) with
// one entry per feasible control, aligned with `feasible[t][s]`:
//   feasible[t][s]        ordered (ascending) control indices, t = 0..T
//   next_state[t][s][j]   transition target, t = 0..T-1
//   contribution[t][s][j] h value
//   individual_cost[t][s][j] l value
struct AgentSpec {
    std::vector<std::string> state_labels;
    std::vector<std::string> control_labels;
    std::vector<int> initial_states; // ascending state indices
    std::vector<std::vector<std::vector<int>>> feasible;
    std::vector<std::vector<std::vector<int>>> next_state;
    std::vector<std::vector<std::vector<double>>> contribution;
    std::vector<std::vector<std::vector<double>>> individual_cost;

    int num_states() const { return static_cast<int>(state_labels.size()); }
    int num_controls() const { return static_cast<int>(control_labels.size()); }

    // Position of control u in feasible[t][s], or -1 if u is not feasible there.
    int feasible_position(int t, int s, int u) const;

    bool operator==(const AgentSpec&) const = default;
};

struct SocialCostBlock {
    enum class Kind { quadratic, linear, identity, zero };

    Kind kind = Kind::zero;
    double alpha = 0.0;  // quadratic curvature coefficient, >= 0
    double target = 0.0; // quadratic target
    double weight = 0.0; // linear slope

    static SocialCostBlock quadratic(double alpha, double target) {
        return {Kind::quadratic, alpha, target, 0.0};
    }
    static SocialCostBlock linear(double weight) { return {Kind::linear, 0.0, 0.0, weight}; }
    static SocialCostBlock identity() { return {Kind::identity, 0.0, 0.0, 0.0}; }
    static SocialCostBlock zero() { return {Kind::zero, 0.0, 0.0, 0.0}; }

    bool operator==(const SocialCostBlock&) const = default;
};

// The multi-agent control problem: N agents over horizon T, coupled through
// T+2 social cost blocks applied to the average contribution vector. Block
// T+1 is the identity block summing the per-agent individual costs.
struct OcInstance {
    int num_agents = 0; // N
    int horizon = 0;    // T
    std::vector<AgentSpec> agents;
    std::vector<SocialCostBlock> social; // size T+2

    int block_count() const { return horizon + 2; }

    bool operator==(const OcInstance&) const = default;
};

struct ValidationIssue {
    int agent = -1; // -1: instance-level
    int t = -1;
    int state = -1;
    int control = -1;
    std::string message;
};

// Structural checks for Assumptions I/II and table shape consistency.
// Violations are reported as data; an empty report means the instance is valid.
std::vector<ValidationIssue> validate_instance(const OcInstance& instance);

// Throws ValidationError listing every issue if the instance is invalid.
void require_valid(const OcInstance& instance);

std::string format_issues(const std::vector<ValidationIssue>& issues);

// True iff traj starts in the initial set, picks feasible controls, and
// follows the transition map. Lengths must be T+1 (else InvalidArgumentError).
bool is_feasible(const AgentSpec& agent, int horizon, const Trajectory& traj);

// Diagnostic variant: nullopt when feasible, else a message naming the time step.
std::optional<std::string> feasibility_violation(const AgentSpec& agent, int horizon,
                                                 const Trajectory& traj);

// g_i(x_i): entries 0..T are h at each step, entry T+1 the summed individual
// cost. Throws FeasibilityError on infeasible trajectories.
std::vector<double> contribution_vector(const AgentSpec& agent, int horizon,
                                        const Trajectory& traj);

// Cost of problem (1) evaluated directly: social costs on the averaged h
// per time step plus the averaged individual-cost sum. This is a separate
// route from evaluate_cost() and the two are cross-checked in tests.
double evaluate_oc_cost(const OcInstance& instance, std::span<const Trajectory> x);

// The trajectory picking the first initial state and the first feasible
// control at every step. Used to initialize both solvers.
Trajectory default_trajectory(const AgentSpec& agent, int horizon);
std::vector<Trajectory> default_trajectories(const OcInstance& instance);

// All feasible trajectories in lexicographic order (initial state, then
// controls step by step, each in table order).
std::vector<Trajectory> enumerate_trajectories(const AgentSpec& agent, int horizon);

// Number of feasible trajectories, computed by forward counting (as a double
// so desk-scale overflow is impossible).
double count_trajectories(const AgentSpec& agent, int horizon);

} // namespace aoc
