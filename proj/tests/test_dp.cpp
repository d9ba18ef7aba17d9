#include <doctest.h>

#include <chrono>
#include <cmath>

#include "core/battery.hpp"
#include "core/dp.hpp"
#include "core/errors.hpp"
#include "support/random_instance.hpp"

using namespace aoc;
namespace ts = aoc::testsupport;

namespace {

AgentSpec small_battery_agent(int horizon, int u_max, int s_in, int s_max, double beta) {
    BatteryParams p;
    p.num_agents = 1;
    p.horizon = horizon;
    p.u_max = u_max;
    p.s_in_lo = p.s_in_hi = s_in;
    p.s_max_lo = p.s_max_hi = s_max;
    p.beta_lo = p.beta_hi = beta;
    return generate_battery(p).agents[0];
}

MultiplierVector mu_of(std::vector<double> values) { return MultiplierVector{std::move(values)}; }

} // namespace

TEST_CASE("priced_cost: closed form and feasibility error") {
    const AgentSpec agent = small_battery_agent(1, 1, 0, 2, 1.0);
    // mu_0 = 0: only the individual cost (zero before T).
    CHECK(priced_cost(agent, 1, mu_of({0.0, 5.0, 1.0}), 0, 0, 1) == 0.0);
    // l = 0, h = u, mu_0 = 10, u = 1.
    CHECK(priced_cost(agent, 1, mu_of({10.0, 5.0, 1.0}), 0, 0, 1) == doctest::Approx(10.0));
    // Terminal step: h^T = 0, so the price never enters.
    const double at_zero = priced_cost(agent, 1, mu_of({0.0, 0.0, 1.0}), 1, 0, 0);
    const double at_nine = priced_cost(agent, 1, mu_of({0.0, 9.0, 1.0}), 1, 0, 0);
    CHECK(at_zero == at_nine);
    CHECK(at_zero == doctest::Approx(4.0)); // beta (s_max - 0)^2 = 4
    // Control 1 is infeasible at full charge.
    CHECK_THROWS_AS((void)priced_cost(agent, 1, mu_of({0.0, 0.0, 1.0}), 1, 2, 1),
                    FeasibilityError);
}

TEST_CASE("backward_pass: zero costs give zero values") {
    AgentSpec agent = small_battery_agent(2, 1, 0, 2, 0.0);
    const ValueTable table = backward_pass(agent, 2, mu_of({0.0, 0.0, 0.0, 1.0}));
    REQUIRE(table.values.size() == 4);
    for (const auto& row : table.values)
        for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("backward_pass: two-trajectory battery hand example") {
    const AgentSpec agent = small_battery_agent(1, 1, 0, 1, 1.0);
    // States {0,1}; terminal cost (1-s)^2; h^T = 0.
    {
        const ValueTable table = backward_pass(agent, 1, mu_of({10.0, 0.0, 1.0}));
        CHECK(table.values[1][0] == doctest::Approx(1.0));
        CHECK(table.values[1][1] == doctest::Approx(0.0));
        CHECK(table.values[0][0] == doctest::Approx(1.0)); // min(0+1, 10+0)
        CHECK(table.values[2][0] == 0.0);
        CHECK(table.values[2][1] == 0.0);
    }
    {
        const ValueTable table = backward_pass(agent, 1, mu_of({0.0, 0.0, 1.0}));
        CHECK(table.values[0][0] == doctest::Approx(0.0)); // min(0+1, 0+0)
    }
}

TEST_CASE("backward_pass satisfies the Bellman recursion on random agents") {
    for (uint64_t seed = 60; seed < 70; ++seed) {
        const OcInstance instance = ts::random_instance(seed, {4, 3, 3, 1});
        const AgentSpec& agent = instance.agents[0];
        const int T = instance.horizon;
        ts::Draw draw(seed);
        const MultiplierVector mu = ts::random_multiplier(draw, T, -5.0, 5.0);
        const ValueTable table = backward_pass(agent, T, mu);
        for (int t = 0; t <= T; ++t) {
            for (int s = 0; s < agent.num_states(); ++s) {
                double best = std::numeric_limits<double>::infinity();
                for (int u : agent.feasible[t][s]) {
                    double v = priced_cost(agent, T, mu, t, s, u);
                    if (t < T) {
                        const int j = agent.feasible_position(t, s, u);
                        v += table.values[t + 1][agent.next_state[t][s][j]];
                    }
                    best = std::min(best, v);
                }
                CHECK(table.values[t][s] == doctest::Approx(best).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("best_response: tie-breaking picks the first minimizer in order") {
    // All costs zero: every choice ties, so the default trajectory wins.
    AgentSpec agent = small_battery_agent(2, 2, 0, 4, 0.0);
    const BestResponse br = best_response(agent, 2, mu_of({0.0, 0.0, 0.0, 1.0}));
    CHECK(br.value == 0.0);
    CHECK(br.trajectory == default_trajectory(agent, 2));
}

TEST_CASE("best_response: charging price flips the optimal control") {
    const AgentSpec agent = small_battery_agent(1, 1, 0, 1, 1.0);
    {
        const BestResponse br = best_response(agent, 1, mu_of({10.0, 0.0, 1.0}));
        CHECK(br.trajectory.controls[0] == 0); // charging costs 10 > penalty 1
        CHECK(br.value == doctest::Approx(1.0));
    }
    {
        const BestResponse br = best_response(agent, 1, mu_of({0.0, 0.0, 1.0}));
        CHECK(br.trajectory.controls[0] == 1);
        CHECK(br.value == doctest::Approx(0.0));
    }
}

TEST_CASE("best_response matches brute-force enumeration on 200 random agents") {
    int done = 0;
    for (uint64_t seed = 100; done < 200; ++seed) {
        const OcInstance instance = ts::random_instance(seed, {5, 4, 4, 1});
        const AgentSpec& agent = instance.agents[0];
        const int T = instance.horizon;
        if (count_trajectories(agent, T) > 500) continue;
        ++done;
        ts::Draw draw(seed * 3 + 1);
        const MultiplierVector mu = ts::random_multiplier(draw, T, -5.0, 5.0);
        const BestResponse br = best_response(agent, T, mu);
        CHECK(is_feasible(agent, T, br.trajectory));
        const double oracle = ts::brute_force_priced_minimum(agent, T, mu);
        CHECK(std::abs(br.value - oracle) <= 1e-9);
        // The returned trajectory attains the reported value.
        CHECK(std::abs(ts::priced_total(agent, T, mu, br.trajectory) - br.value) <= 1e-9);
    }
}

TEST_CASE("best_response is deterministic") {
    const OcInstance instance = ts::random_instance(77);
    const AgentSpec& agent = instance.agents[0];
    ts::Draw draw(78);
    const MultiplierVector mu = ts::random_multiplier(draw, instance.horizon, -3.0, 3.0);
    const BestResponse a = best_response(agent, instance.horizon, mu);
    const BestResponse b = best_response(agent, instance.horizon, mu);
    CHECK(a.trajectory == b.trajectory);
    CHECK(a.value == b.value);
}

TEST_CASE("monotone pricing: raising a price never lowers the optimum (h >= 0)") {
    // Battery contributions are nonnegative, so increasing any mu_t can only
    // increase every priced cost pointwise.
    const AgentSpec agent = small_battery_agent(3, 2, 0, 5, 0.7);
    ts::Draw draw(91);
    for (int rep = 0; rep < 50; ++rep) {
        MultiplierVector mu;
        for (int t = 0; t < 5; ++t) mu.values.push_back(draw.real(0.0, 4.0));
        const double base = best_response(agent, 3, mu).value;
        MultiplierVector raised = mu;
        raised.values[draw.integer(0, 3)] += draw.real(0.0, 2.0);
        CHECK(best_response(agent, 3, raised).value >= base - 1e-12);
    }
}

TEST_CASE("empty feasible set raises the Assumption I error") {
    AgentSpec agent = small_battery_agent(1, 1, 0, 2, 1.0);
    agent.feasible[1][0].clear();
    agent.next_state.resize(1);
    agent.contribution[1][0].clear();
    agent.individual_cost[1][0].clear();
    CHECK_THROWS_AS((void)backward_pass(agent, 1, mu_of({0.0, 0.0, 1.0})),
                    ValidationError);
}

TEST_CASE("runtime grows about linearly in the state count (smoke)") {
    const auto time_agent = [](int states) {
        const AgentSpec agent = small_battery_agent(60, 3, 0, states - 1, 0.5);
        MultiplierVector mu;
        mu.values.assign(62, 0.25);
        // Warm up once, then take the best of three.
        (void)best_response(agent, 60, mu);
        double best = std::numeric_limits<double>::infinity();
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            for (int k = 0; k < 20; ++k) (void)best_response(agent, 60, mu);
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        return best;
    };
    const double small = time_agent(60);
    const double large = time_agent(600);
    CHECK(large / small <= 15.0);
}
