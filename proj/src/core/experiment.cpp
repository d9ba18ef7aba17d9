#include "core/experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/instance_io.hpp"
#include "core/parallel.hpp"

namespace aoc {

std::string format_number(double value) {
    char buffer[40];
    const auto out = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, out.ptr);
}

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    return out;
}

std::string wall_cell(double wall_ms, bool include) {
    return include ? format_number(wall_ms) : std::string();
}

} // namespace

void write_fw_csv(const RelaxedRunResult& result, const std::string& path,
                  bool include_timings) {
    std::ofstream out = open_output(path);
    out << "k,f_yk,fw_gap,lower_bound,wall_ms\n";
    for (const FwIterate& row : result.iterates) {
        out << row.k << ',' << format_number(row.value) << ',' << format_number(row.gap)
            << ',' << format_number(row.lower_bound) << ','
            << wall_cell(row.wall_ms, include_timings) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_sfw_csv(const SfwRunResult& result, const std::string& path,
                   bool include_timings) {
    std::ofstream out = open_output(path);
    out << "k,J_xk,gamma_k,omega_k,n_k,swaps,wall_ms\n";
    for (const SfwIterate& row : result.iterates) {
        out << row.k << ',' << format_number(row.value) << ',' << format_number(row.gamma)
            << ',' << format_number(row.omega) << ',' << row.n << ',' << row.swaps << ','
            << wall_cell(row.wall_ms, include_timings) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::pair<double, double> mean_std(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return {0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

ExperimentSummary run_experiment(const OcInstance& instance, const ExperimentConfig& config,
                                 const std::string& outdir) {
    if (config.reps < 1) throw InvalidArgumentError("experiment: reps must be >= 1");
    require_valid(instance);
    std::filesystem::create_directories(outdir);
    const auto path_of = [&](const std::string& name) { return outdir + "/" + name; };

    ExperimentSummary summary;
    std::ostringstream text;

    switch (config.algorithm) {
        case Algorithm::fw: {
            const RelaxedRunResult fw = fw_run(instance, config.iterations, config.step,
                                               config.workers, config.include_timings);
            write_fw_csv(fw, path_of("fw.csv"), config.include_timings);
            summary.files.push_back(path_of("fw.csv"));
            summary.jstar_proxy = fw.final_value;
            summary.certified_lower_bound = fw.certified_lower_bound;
            text << "fw: K=" << config.iterations
                 << " final=" << format_number(fw.final_value)
                 << " lower_bound=" << format_number(fw.certified_lower_bound) << "\n";
            break;
        }
        case Algorithm::sfw: {
            const RelaxedRunResult fw = fw_run(instance, config.fw_reference_iters, StepRule{},
                                               config.workers, config.include_timings);
            write_fw_csv(fw, path_of("fw_reference.csv"), config.include_timings);
            summary.files.push_back(path_of("fw_reference.csv"));
            summary.jstar_proxy = fw.final_value;
            summary.certified_lower_bound = fw.certified_lower_bound;

            std::vector<SfwRunResult> runs(config.reps);
            parallel_for(config.reps, config.workers, [&](int r) {
                SfwSchedule schedule;
                schedule.iterations = config.iterations;
                schedule.samples = config.samples;
                schedule.step = config.step;
                schedule.master_seed = config.master_seed + static_cast<uint64_t>(r);
                // Inner solver runs sequentially; parallelism is across reps.
                runs[r] = sfw_run(instance, schedule, 1, fw.final_value,
                                  config.include_timings);
            });
            for (int r = 0; r < config.reps; ++r) {
                const std::string name = "sfw_rep" + std::to_string(r) + ".csv";
                write_sfw_csv(runs[r], path_of(name), config.include_timings);
                summary.files.push_back(path_of(name));
            }

            {
                std::ofstream out = open_output(path_of("sfw_summary.csv"));
                out << "seed,final_J,final_gamma\n";
                for (int r = 0; r < config.reps; ++r) {
                    out << (config.master_seed + static_cast<uint64_t>(r)) << ','
                        << format_number(runs[r].best_value) << ','
                        << format_number(runs[r].gap_vs_relaxed) << '\n';
                }
                summary.files.push_back(path_of("sfw_summary.csv"));
            }

            {
                std::ofstream out = open_output(path_of("sfw_aggregate.csv"));
                out << "k,mean_gamma,std_gamma\n";
                const int rows = static_cast<int>(runs.front().iterates.size());
                for (int k = 0; k < rows; ++k) {
                    std::vector<double> gammas(config.reps);
                    for (int r = 0; r < config.reps; ++r)
                        gammas[r] = runs[r].iterates[k].gamma;
                    const auto [mean, sd] = mean_std(gammas);
                    out << runs.front().iterates[k].k << ',' << format_number(mean) << ','
                        << format_number(sd) << '\n';
                    if (k == rows - 1) {
                        summary.mean_final_gamma = mean;
                        summary.std_final_gamma = sd;
                    }
                }
                summary.files.push_back(path_of("sfw_aggregate.csv"));
            }

            text << "sfw: K=" << config.iterations << " n_k=" << config.samples
                 << " reps=" << config.reps << " seed=" << config.master_seed << "\n";
            text << "relaxed proxy (fw K=" << config.fw_reference_iters
                 << "): " << format_number(summary.jstar_proxy)
                 << " certified lower bound: "
                 << format_number(summary.certified_lower_bound) << "\n";
            text << "final gamma: mean=" << format_number(summary.mean_final_gamma)
                 << " std=" << format_number(summary.std_final_gamma) << "\n";
            break;
        }
        case Algorithm::exact: {
            const ExactResult exact = enumerate_optimum(instance, config.cap);
            summary.exact_value = exact.value;
            std::ofstream out = open_output(path_of("exact_solution.json"));
            out << solution_to_json(instance, exact.solution, exact.value) << "\n";
            summary.files.push_back(path_of("exact_solution.json"));
            text << "exact: J*=" << format_number(exact.value)
                 << " combinations=" << format_number(exact.combinations) << "\n";
            break;
        }
        case Algorithm::export_micp: {
            const MicpModel model = build_micp(instance);
            std::ofstream out = open_output(path_of("model.lp"));
            out << export_lp(model);
            summary.files.push_back(path_of("model.lp"));
            text << "export-micp: d(m)=" << model.var_count() << " -> " << path_of("model.lp")
                 << "\n";
            break;
        }
    }

    summary.text = text.str();
    return summary;
}

std::string bounds_report_text(const OcInstance& instance,
                               const std::optional<CoarseBounds>& coarse, int iterations,
                               int samples, double epsilon) {
    require_valid(instance);
    const BoundReport report = compute_constants(instance, coarse);
    SfwSchedule schedule;
    schedule.iterations = iterations;
    schedule.samples = samples;
    const TheoremBounds theorem =
        theorem_bounds(report.c0, report.c1, instance.num_agents, schedule, epsilon);

    double d_max = 0.0, d_sum = 0.0;
    std::size_t d_count = 0;
    for (const auto& row : report.diameters)
        for (double d : row) {
            d_max = std::max(d_max, d);
            d_sum += d;
            ++d_count;
        }

    std::ostringstream out;
    out << "bound report (" << (report.coarse ? "coarse" : "exact") << " mode)\n";
    out << "instance: N=" << instance.num_agents << " T=" << instance.horizon
        << " blocks=" << instance.block_count() << "\n";
    out << "diameters: max=" << format_number(d_max)
        << " mean=" << format_number(d_count ? d_sum / static_cast<double>(d_count) : 0.0)
        << " (" << d_count << " agent-block pairs)\n";
    out << "C0 = " << format_number(report.c0) << "\n";
    out << "C1 = " << format_number(report.c1) << "\n";
    out << "gap bound C1/(2N) = " << format_number(report.gap_bound) << "\n";
    out << "theorem quantities (K=" << iterations << ", n_k=" << samples
        << ", epsilon=" << format_number(epsilon) << "):\n";
    out << "  expectation bound 4*C1/K = " << format_number(theorem.expectation_bound) << "\n";
    out << "  v_K = " << format_number(theorem.v_k) << "\n";
    out << "  m_K = " << format_number(theorem.m_k) << "\n";
    out << "  P[gamma_K < 4*C1/K + epsilon] >= " << format_number(theorem.probability_bound)
        << "\n";
    out << "  K within certified range 1..2N: " << (theorem.k_in_certified_range ? "yes" : "no")
        << "\n";
    return out.str();
}

} // namespace aoc
