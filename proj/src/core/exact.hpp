#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "core/instance.hpp"

namespace aoc {

struct ExactResult {
    double value = 0.0;
    std::vector<Trajectory> solution;
    double combinations = 0.0; // product of per-agent trajectory counts
};

// Product of per-agent feasible-trajectory counts (double: the cap check
// must never overflow).
double count_total_combinations(const OcInstance& instance);

// Global minimum of the original cost over the full product space. Refuses
// with CapExceededError (carrying the computed product) above the cap.
// Ties resolve to the lexicographically first profile.
ExactResult enumerate_optimum(const OcInstance& instance, double cap = 1e7);

// One integer variable per (agent, time, feasible state-control pair).
struct MicpVariable {
    int agent = 0;
    int t = 0;
    int state = 0;
    int control = 0;
};

// Indicator-variable reformulation: objective J-bar over weighted sums of
// the m variables, with simplex, initial-state and flow-conservation
// constraint families. The objective is kept structured (per-block kind
// over a linear form); the quadratic expansion happens only at export.
struct MicpModel {
    OcInstance instance;
    std::vector<MicpVariable> variables;      // ordered by (agent, t, state, control)
    std::vector<std::vector<int>> var_offset; // [agent][t] -> first variable index

    int64_t var_count() const { return static_cast<int64_t>(variables.size()); }
    // Index of m_i^t(s,u), or -1 when (s,u) is not a feasible pair at t.
    int var_index(int agent, int t, int state, int control) const;
};

MicpModel build_micp(const OcInstance& instance);

// Lemma bijection: a feasible profile maps to the 0/1 assignment selecting
// its (state, control) pair at every (agent, t), and back.
std::vector<double> trajectory_to_m(const MicpModel& model, std::span<const Trajectory> x);
// Validates families (i)-(iv) first; throws FeasibilityError with a
// constraint-violation report otherwise.
std::vector<Trajectory> m_to_trajectory(const MicpModel& model, std::span<const double> m);

// J-bar(m), evaluated on the structured objective.
double micp_objective(const MicpModel& model, std::span<const double> m);

// Minimum of J-bar over integer-feasible m, by per-agent enumeration of the
// assignments satisfying (i)-(iv). Independent route from enumerate_optimum.
double micp_enumerate_minimum(const MicpModel& model, double cap = 1e7,
                              std::vector<double>* best_m = nullptr);

// Dense objective coefficients used by the LP writer:
//   J-bar(m) = constant + sum_v linear[v] m_v + sum_{v<=w} quad[{v,w}] m_v m_w
struct ObjectiveExpansion {
    double constant = 0.0;
    std::vector<double> linear;
    std::vector<std::pair<std::pair<int, int>, double>> quadratic; // ((v,w), coef), v <= w
};

ObjectiveExpansion expand_objective(const MicpModel& model);

// LP-format text (CPLEX dialect: quadratic objective in [...]/2, Bounds,
// Generals). Variables are named m_<agent>_<t>_<state>_<control> with index
// numbering; output is byte-identical for identical models.
std::string export_lp(const MicpModel& model);

// Minimal LP reader used to sanity-check exports: counts sections only.
struct LpSummary {
    int variables = 0;        // names seen in Bounds
    int integer_variables = 0;
    int constraints = 0;
    int quadratic_terms = 0;
};

LpSummary parse_lp_summary(const std::string& text);

} // namespace aoc
