#pragma once

#include <optional>
#include <span>
#include <vector>

#include "core/instance.hpp"

namespace aoc {

// A point y in the aggregate space E = R^(T+2), one value per social block.
struct AggregateVector {
    std::vector<double> values;

    bool operator==(const AggregateVector&) const = default;
};

// Gradient of the social cost at an aggregate point; acts as the price on
// contributions in the per-agent subproblems. The terminal entry is 1 by
// construction (identity block).
struct MultiplierVector {
    std::vector<double> values;

    bool operator==(const MultiplierVector&) const = default;
};

double block_value(const SocialCostBlock& block, double y);
double block_gradient(const SocialCostBlock& block, double y);

// G(x) = (1/N) sum_i g_i(x_i), blockwise.
AggregateVector aggregate(const OcInstance& instance, std::span<const Trajectory> x);

// f(y) = sum_t f_t(y_t).
double evaluate_social(const OcInstance& instance, const AggregateVector& y);

// mu_t = f_t'(y_t).
MultiplierVector social_gradient(const OcInstance& instance, const AggregateVector& y);

// J(x) = f(G(x)). Must agree with evaluate_oc_cost to 1e-12 relative.
double evaluate_cost(const OcInstance& instance, std::span<const Trajectory> x);

// Replaces the exact per-agent diameters and per-block gradient-Lipschitz
// constants on quadratic blocks with fixed values. Reproduces printed
// coarse bounds (diameter <= u_max, Ltilde <= 2*alpha_hi for the battery).
struct CoarseBounds {
    double diameter = 0.0;
    double grad_lipschitz = 0.0;
};

// Diameters, Lipschitz data, and the constants C0/C1 plus the relaxation
// gap bound C1/(2N). All derived quantities are recomputable from the
// stored fields, bit for bit.
struct BoundReport {
    std::vector<std::vector<double>> diameters; // [agent][block]
    std::vector<double> lipschitz;              // L_t per block
    std::vector<double> grad_lipschitz;         // Ltilde_t per block
    std::vector<double> block_lo;               // enclosing interval of conv(Y_t)
    std::vector<double> block_hi;
    double c0 = 0.0;
    double c1 = 0.0;
    double gap_bound = 0.0; // C1 / (2N)
    bool coarse = false;
};

// Assembles C0 and C1 from the stored diameters and Lipschitz constants
// (exposed so reports can be revalidated against their own fields).
double assemble_c0(const BoundReport& report);
double assemble_c1(const BoundReport& report, int num_agents);

// Exact per-agent, per-block contribution ranges by reachability/DP, the
// per-block Lipschitz constants on the enclosing interval of conv(Y_t),
// and the assembled constants. With `coarse`, quadratic blocks use the
// supplied diameter and gradient-Lipschitz values instead.
BoundReport compute_constants(const OcInstance& instance,
                              const std::optional<CoarseBounds>& coarse = std::nullopt);

// Range [min, max] of agent i's block-t contribution over all feasible
// trajectories (block T+1 is the individual-cost sum).
std::pair<double, double> contribution_range(const AgentSpec& agent, int horizon, int block);

} // namespace aoc
