#pragma once

#include "core/instance.hpp"
#include "core/social.hpp"

namespace aoc {

// Stepsize rule: omega_k = 2/(k+2) unless a constant in [0,1] is set.
struct StepRule {
    double constant = -1.0;

    double omega(int k) const { return constant >= 0.0 ? constant : 2.0 / (k + 2); }
    bool operator==(const StepRule&) const = default;
};

struct LinearOracleResult {
    AggregateVector point;                      // average of the best-response contributions
    std::vector<Trajectory> responses;          // per-agent minimizers
    std::vector<std::vector<double>> contribs;  // g_i of each response
};

// Solves the linearized subproblem at y: per-agent best responses priced at
// grad f(y), averaged. The result minimizes <grad f(y), .> over conv(Y).
LinearOracleResult fw_linear_oracle(const OcInstance& instance, const AggregateVector& y,
                                    int workers = 1);

// <grad f(y), y - ybar>, the duality certificate: f(y) - gap lower-bounds
// the relaxed optimum. Nonnegative (up to roundoff) for y in conv(Y).
double fw_gap(const OcInstance& instance, const AggregateVector& y, int workers = 1);

struct FwIterate {
    int k = 0;
    double value = 0.0;       // f(y^k)
    double gap = 0.0;         // FW gap at y^k
    double omega = 0.0;
    double lower_bound = 0.0; // best f(y^j) - gap_j seen up to k
    double wall_ms = 0.0;
};

struct RelaxedRunResult {
    std::vector<FwIterate> iterates;     // k = 0..K-1
    AggregateVector final_point;         // y^K
    double final_value = 0.0;            // f(y^K)
    double certified_lower_bound = 0.0;  // max_k f(y^k) - gap_k
};

// Runs exactly K iterations from the deterministic default-trajectory
// aggregate; no early exit, so iteration rows line up across configurations.
RelaxedRunResult fw_run(const OcInstance& instance, int iterations, StepRule step = {},
                        int workers = 1, bool record_timing = false);

} // namespace aoc
