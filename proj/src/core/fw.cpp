#include "core/fw.hpp"

#include <chrono>
#include <limits>

#include "core/dp.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace aoc {

LinearOracleResult fw_linear_oracle(const OcInstance& instance, const AggregateVector& y,
                                    int workers) {
    const int N = instance.num_agents;
    const MultiplierVector mu = social_gradient(instance, y);

    LinearOracleResult result;
    result.responses.resize(N);
    result.contribs.resize(N);
    parallel_for(N, workers, [&](int i) {
        BestResponse br = best_response(instance.agents[i], instance.horizon, mu);
        result.contribs[i] = contribution_vector(instance.agents[i], instance.horizon,
                                                 br.trajectory);
        result.responses[i] = std::move(br.trajectory);
    });

    const int M = instance.block_count();
    result.point.values.assign(M, 0.0);
    for (int i = 0; i < N; ++i)
        for (int t = 0; t < M; ++t) result.point.values[t] += result.contribs[i][t];
    for (int t = 0; t < M; ++t) result.point.values[t] /= N;
    return result;
}

namespace {

double gap_against(const OcInstance& instance, const AggregateVector& y,
                   const AggregateVector& ybar) {
    const MultiplierVector mu = social_gradient(instance, y);
    double gap = 0.0;
    for (std::size_t t = 0; t < mu.values.size(); ++t)
        gap += mu.values[t] * (y.values[t] - ybar.values[t]);
    return gap;
}

} // namespace

double fw_gap(const OcInstance& instance, const AggregateVector& y, int workers) {
    return gap_against(instance, y, fw_linear_oracle(instance, y, workers).point);
}

RelaxedRunResult fw_run(const OcInstance& instance, int iterations, StepRule step,
                        int workers, bool record_timing) {
    if (iterations < 1) throw InvalidArgumentError("fw: iteration count must be >= 1");

    RelaxedRunResult result;
    result.iterates.reserve(iterations);

    AggregateVector y = aggregate(instance, default_trajectories(instance));
    double lower_bound = -std::numeric_limits<double>::infinity();

    for (int k = 0; k < iterations; ++k) {
        const auto started = std::chrono::steady_clock::now();

        const LinearOracleResult oracle = fw_linear_oracle(instance, y, workers);
        const double value = evaluate_social(instance, y);
        const double gap = gap_against(instance, y, oracle.point);
        if (value - gap > lower_bound) lower_bound = value - gap;

        FwIterate row;
        row.k = k;
        row.value = value;
        row.gap = gap;
        row.omega = step.omega(k);
        row.lower_bound = lower_bound;
        if (record_timing) {
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - started)
                              .count();
        }
        result.iterates.push_back(row);

        const double omega = row.omega;
        for (std::size_t t = 0; t < y.values.size(); ++t)
            y.values[t] = (1.0 - omega) * y.values[t] + omega * oracle.point.values[t];
    }

    result.final_point = y;
    result.final_value = evaluate_social(instance, y);
    result.certified_lower_bound = lower_bound;
    return result;
}

} // namespace aoc
