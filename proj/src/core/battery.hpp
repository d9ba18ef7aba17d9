#pragma once

#include <cstdint>

#include "core/instance.hpp"
#include "core/social.hpp"

namespace aoc {

// Battery-fleet experiment parameters. Defaults reproduce the reference
// setup: N=100, T=24, u_max=4, s_in ~ U{0..20}, s_max ~ U{20..40},
// alpha_t ~ U[1,2], beta_i ~ U[0,1], c_t = 1.5*floor(sin(pi t/12)+1).
struct BatteryParams {
    int num_agents = 100;
    int horizon = 24;
    int u_max = 4;
    int s_in_lo = 0, s_in_hi = 20;
    int s_max_lo = 20, s_max_hi = 40;
    double alpha_lo = 1.0, alpha_hi = 2.0;
    double beta_lo = 0.0, beta_hi = 1.0;
    double target_scale = 1.5;
    // The printed target formula applies floor to sin(pi t/12)+1, giving a
    // 3-level step profile. smooth_target drops the floor for sensitivity
    // studies; it is never substituted silently.
    bool smooth_target = false;
    uint64_t seed = 0;
};

// c^t for t in 0..T-1.
double target_profile(int t, int horizon, double scale, bool smooth = false);

// Builds the fleet instance: additive charging dynamics s' = s + u with
// u in {0..min(u_max, s_max - s)}, quadratic tracking costs on the average
// charging rate, and a terminal quadratic distance-to-full individual cost.
// All draws come from the seeded counter stream; the result always passes
// validate_instance.
OcInstance generate_battery(const BatteryParams& params);

// The printed coarse constants: diameter u_max and gradient-Lipschitz
// 2*alpha_hi on every quadratic block.
CoarseBounds battery_coarse_bounds(const BatteryParams& params);

} // namespace aoc
