#include "core/sfw.hpp"

#include <chrono>
#include <cmath>

#include "core/dp.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace aoc {

SfwState sfw_init(const OcInstance& instance) {
    SfwState state;
    state.x = default_trajectories(instance);
    state.contribs.resize(instance.num_agents);
    for (int i = 0; i < instance.num_agents; ++i)
        state.contribs[i] = contribution_vector(instance.agents[i], instance.horizon,
                                                state.x[i]);
    const int M = instance.block_count();
    AggregateVector y;
    y.values.assign(M, 0.0);
    for (int i = 0; i < instance.num_agents; ++i)
        for (int t = 0; t < M; ++t) y.values[t] += state.contribs[i][t];
    for (int t = 0; t < M; ++t) y.values[t] /= instance.num_agents;
    state.value = evaluate_social(instance, y);
    state.k = 0;
    return state;
}

SfwIterate sfw_iterate(const OcInstance& instance, SfwState& state,
                       const SfwSchedule& schedule, int workers, bool record_timing) {
    const auto started = std::chrono::steady_clock::now();
    const int N = instance.num_agents;
    const int M = instance.block_count();
    const int k = state.k;
    const double omega = schedule.step.omega(k);
    const int n_k = schedule.n(k);
    if (n_k < 1) throw InvalidArgumentError("sfw: n_k must be >= 1");
    if (omega < 0.0 || omega > 1.0)
        throw InvalidArgumentError("sfw: omega_k must lie in [0,1]");
    const CounterRng rng(schedule.master_seed);

    // Step 1: incumbent aggregate and per-agent best responses.
    AggregateVector y;
    y.values.assign(M, 0.0);
    for (int i = 0; i < N; ++i)
        for (int t = 0; t < M; ++t) y.values[t] += state.contribs[i][t];
    for (int t = 0; t < M; ++t) y.values[t] /= N;
    const MultiplierVector mu = social_gradient(instance, y);

    std::vector<Trajectory> responses(N);
    std::vector<std::vector<double>> response_contribs(N);
    parallel_for(N, workers, [&](int i) {
        BestResponse br = best_response(instance.agents[i], instance.horizon, mu);
        response_contribs[i] = contribution_vector(instance.agents[i], instance.horizon,
                                                   br.trajectory);
        responses[i] = std::move(br.trajectory);
    });

    // Aggregate shift of swapping agent i to its best response.
    std::vector<std::vector<double>> delta(N, std::vector<double>(M));
    for (int i = 0; i < N; ++i)
        for (int t = 0; t < M; ++t)
            delta[i][t] = (response_contribs[i][t] - state.contribs[i][t]) / N;

    // Step 2: n_k Bernoulli(omega_k) mixtures, each valued incrementally.
    std::vector<double> candidate_value(n_k);
    std::vector<long long> candidate_ones(n_k);
    parallel_for(n_k, workers, [&](int j) {
        AggregateVector shifted = y;
        long long ones = 0;
        for (int i = 0; i < N; ++i) {
            if (rng.bernoulli(omega, RngStream::sfw_bernoulli, k, j, i)) {
                ++ones;
                for (int t = 0; t < M; ++t) shifted.values[t] += delta[i][t];
            }
        }
        candidate_ones[j] = ones;
        candidate_value[j] = evaluate_social(instance, shifted);
    });

    SfwIterate row;
    row.k = k;
    row.value = state.value;
    row.gamma = std::numeric_limits<double>::quiet_NaN();
    row.omega = omega;
    row.n = n_k;
    for (int j = 0; j < n_k; ++j) row.lambda_ones += candidate_ones[j];

    // Keep the incumbent on ties; otherwise the lowest improving sample.
    int selected = -1;
    double best = state.value;
    for (int j = 0; j < n_k; ++j) {
        if (candidate_value[j] < best) {
            best = candidate_value[j];
            selected = j;
        }
    }
    if (selected >= 0) {
        int swaps = 0;
        for (int i = 0; i < N; ++i) {
            if (rng.bernoulli(omega, RngStream::sfw_bernoulli, k, selected, i)) {
                state.x[i] = responses[i];
                state.contribs[i] = response_contribs[i];
                ++swaps;
            }
        }
        row.swaps = swaps;
        state.value = best;
    }
    state.k = k + 1;

    if (record_timing) {
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    }
    return row;
}

SfwRunResult sfw_run(const OcInstance& instance, const SfwSchedule& schedule, int workers,
                     double jstar_reference, bool record_timing) {
    if (schedule.iterations < 1) throw InvalidArgumentError("sfw: iteration count must be >= 1");

    SfwState state = sfw_init(instance);
    SfwRunResult result;
    result.iterates.reserve(schedule.iterations + 1);
    for (int k = 0; k < schedule.iterations; ++k) {
        SfwIterate row = sfw_iterate(instance, state, schedule, workers, record_timing);
        row.gamma = row.value - jstar_reference;
        result.iterates.push_back(row);
    }

    SfwIterate last;
    last.k = schedule.iterations;
    last.value = state.value;
    last.gamma = state.value - jstar_reference;
    last.omega = schedule.step.omega(schedule.iterations);
    last.n = schedule.n(schedule.iterations);
    result.iterates.push_back(last);

    result.best = std::move(state.x);
    result.best_value = state.value;
    result.gap_vs_relaxed = state.value - jstar_reference;
    return result;
}

TheoremBounds theorem_bounds(double c0, double c1, int num_agents,
                             const SfwSchedule& schedule, double epsilon) {
    const int K = schedule.iterations;
    if (K < 1) throw InvalidArgumentError("theorem bounds: K must be >= 1");
    if (epsilon <= 0.0) throw InvalidArgumentError("theorem bounds: epsilon must be positive");

    TheoremBounds bounds;
    bounds.c0 = c0;
    bounds.c1 = c1;
    bounds.iterations = K;
    bounds.epsilon = epsilon;
    bounds.k_in_certified_range = K <= 2 * num_agents;

    double sum = 0.0;
    double max_term = 0.0;
    for (int k = 1; k <= K - 1; ++k) {
        const int n_k = schedule.n(k);
        if (n_k < 1) throw InvalidArgumentError("theorem bounds: n_k must be >= 1");
        sum += static_cast<double>(k) * (k + 1.0) * (k + 1.0) / n_k;
        max_term = std::max(max_term, (k + 1.0) * (k + 2.0) / n_k);
    }
    const double kd = static_cast<double>(K);
    bounds.v_k = 2.0 * c0 * c0 / (kd * kd * (kd + 1.0) * (kd + 1.0)) * sum;
    bounds.m_k = c0 / (kd * (kd + 1.0)) * max_term;
    bounds.expectation_bound = 4.0 * c1 / kd;

    const double denom = bounds.v_k + epsilon * bounds.m_k / 3.0;
    bounds.probability_bound =
        denom <= 0.0 ? 1.0
                     : 1.0 - std::exp(-epsilon * epsilon * num_agents / (2.0 * denom));
    return bounds;
}

} // namespace aoc
