#pragma once

#include <optional>
#include <string>

#include "core/exact.hpp"
#include "core/fw.hpp"
#include "core/sfw.hpp"
#include "core/social.hpp"

namespace aoc {

// Shortest round-trip decimal form; used for every numeric cell so that
// identical runs produce byte-identical files.
std::string format_number(double value);

enum class Algorithm { fw, sfw, exact, export_micp };

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::sfw;
    int iterations = 100;          // K for the chosen algorithm
    int samples = 20;              // n_k (SFW)
    int reps = 1;                  // independent SFW repetitions
    uint64_t master_seed = 0;      // rep r uses master_seed + r
    int fw_reference_iters = 500;  // relaxed-value proxy run (SFW gamma)
    StepRule step;
    int workers = 1;
    double cap = 1e7;              // enumeration cap (exact)
    bool include_timings = false;  // fill the wall_ms column
};

struct ExperimentSummary {
    std::string text;              // human-readable recap
    std::vector<std::string> files;
    double jstar_proxy = 0.0;      // fw reference value (SFW runs)
    double certified_lower_bound = 0.0;
    double mean_final_gamma = 0.0;
    double std_final_gamma = 0.0;
    double exact_value = 0.0;      // exact runs only
};

// CSV schemas (fixed; golden-file tested):
//   fw:        k,f_yk,fw_gap,lower_bound,wall_ms
//   sfw:       k,J_xk,gamma_k,omega_k,n_k,swaps,wall_ms
//   summary:   seed,final_J,final_gamma
//   aggregate: k,mean_gamma,std_gamma
// The wall_ms column stays empty unless timings were recorded, keeping
// default outputs byte-identical across runs.
void write_fw_csv(const RelaxedRunResult& result, const std::string& path,
                  bool include_timings);
void write_sfw_csv(const SfwRunResult& result, const std::string& path,
                   bool include_timings);

// Runs the configured algorithm and writes its outputs under outdir:
//   fw:          fw.csv
//   sfw:         fw_reference.csv, sfw_rep<r>.csv, sfw_summary.csv,
//                sfw_aggregate.csv
//   exact:       exact_solution.json
//   export_micp: model.lp
ExperimentSummary run_experiment(const OcInstance& instance, const ExperimentConfig& config,
                                 const std::string& outdir);

// Text block with diameter statistics, C0, C1, the relaxation gap bound,
// and the theorem quantities at the given (K, n_k, epsilon).
std::string bounds_report_text(const OcInstance& instance,
                               const std::optional<CoarseBounds>& coarse, int iterations,
                               int samples, double epsilon);

// Sample mean and standard deviation (n-1 denominator; 0 when n == 1).
std::pair<double, double> mean_std(std::span<const double> values);

} // namespace aoc
