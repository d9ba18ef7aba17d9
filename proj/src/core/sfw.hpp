#pragma once

#include <cstdint>
#include <limits>

#include "core/fw.hpp"
#include "core/instance.hpp"
#include "core/social.hpp"

namespace aoc {

// Iteration budget, stepsize rule, per-iteration sample counts, and the
// master seed of the counter-based random stream.
struct SfwSchedule {
    int iterations = 100;            // K
    StepRule step;                   // omega_k
    int samples = 20;                // constant n_k
    std::vector<int> samples_override; // optional per-k n_k (size >= K when set)
    uint64_t master_seed = 0;

    int n(int k) const {
        if (k >= 0 && k < static_cast<int>(samples_override.size()))
            return samples_override[k];
        return samples;
    }
};

struct SfwIterate {
    int k = 0;
    double value = 0.0;       // J(x^k) at the start of iteration k
    double gamma = 0.0;       // J(x^k) - reference (NaN without a reference)
    double omega = 0.0;
    int n = 0;
    long long lambda_ones = 0; // Bernoulli(omega_k) successes across all (j, i)
    int swaps = 0;             // swapped agents in the selected candidate
    double wall_ms = 0.0;
};

struct SfwRunResult {
    std::vector<SfwIterate> iterates; // k = 0..K (row K: final state, no draw stats)
    std::vector<Trajectory> best;     // x^K
    double best_value = 0.0;          // J(x^K)
    double gap_vs_relaxed = 0.0;      // J(x^K) - reference (NaN without one)
};

// Incumbent trajectories with cached contribution vectors and value.
struct SfwState {
    std::vector<Trajectory> x;
    std::vector<std::vector<double>> contribs; // g_i(x_i)
    double value = 0.0;
    int k = 0;
};

SfwState sfw_init(const OcInstance& instance);

// One Algorithm-2 iteration: best responses at the incumbent aggregate,
// n_k Bernoulli(omega_k) mixtures, then the cheapest of the candidates and
// the incumbent. The Bernoulli draw for (k, j, i) is a pure function of
// (master_seed, k, j, i), so the result is independent of scheduling.
// Candidate costs are computed incrementally from the incumbent aggregate;
// they match full evaluation to 1e-9 (asserted in tests).
SfwIterate sfw_iterate(const OcInstance& instance, SfwState& state,
                       const SfwSchedule& schedule, int workers = 1,
                       bool record_timing = false);

// K iterations from the deterministic default-trajectory profile. The
// recorded J sequence is non-increasing by construction. jstar_reference
// (e.g. the relaxed value from fw_run) feeds the gamma column.
SfwRunResult sfw_run(const OcInstance& instance, const SfwSchedule& schedule,
                     int workers = 1,
                     double jstar_reference = std::numeric_limits<double>::quiet_NaN(),
                     bool record_timing = false);

// Theorem constants for the gap gamma_K = J(x^K) - relaxed optimum:
// E[gamma_K] <= 4*C1/K and the deviation bound at a given epsilon.
struct TheoremBounds {
    double c0 = 0.0, c1 = 0.0;
    int iterations = 0; // K
    double v_k = 0.0, m_k = 0.0;
    double expectation_bound = 0.0;      // 4*C1/K
    double epsilon = 0.0;
    double probability_bound = 0.0;      // P[gamma_K < 4C1/K + eps] >= this
    bool k_in_certified_range = true;    // K in 1..2N
};

TheoremBounds theorem_bounds(double c0, double c1, int num_agents,
                             const SfwSchedule& schedule, double epsilon);

} // namespace aoc
