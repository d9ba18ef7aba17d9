// Command-line front end for the aoc shared library. Everything goes
// through the C API in aoc/aoc.h; exit codes mirror the status codes
// (0 ok, 2 validation, 3 cap exceeded, 4 io, 5 bad argument, 6 infeasible,
// 7 internal).
#include <aoc/aoc.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include <CLI11.hpp>

namespace {

int exit_code(aoc_status status) {
    switch (status) {
        case AOC_OK: return 0;
        case AOC_ERR_VALIDATION: return 2;
        case AOC_ERR_CAP: return 3;
        case AOC_ERR_IO: return 4;
        case AOC_ERR_ARGUMENT: return 5;
        case AOC_ERR_INFEASIBLE: return 6;
        case AOC_ERR_INTERNAL: return 7;
    }
    return 7;
}

[[noreturn]] void fail(aoc_status status) {
    std::fprintf(stderr, "error: %s\n", aoc_last_error());
    std::exit(exit_code(status));
}

void check(aoc_status status) {
    if (status != AOC_OK) fail(status);
}

std::string default_outdir() {
    const char* env = std::getenv("AOC_OUT_DIR");
    return env && *env ? env : ".";
}

struct InstanceHandle {
    aoc_instance* ptr = nullptr;
    ~InstanceHandle() { aoc_instance_free(ptr); }
};

// Instance source shared by solver subcommands: a file or the battery
// generator.
struct InstanceSource {
    std::string path;
    bool generate = false;
    aoc_battery_params battery{};
};

void add_instance_flags(CLI::App* cmd, InstanceSource& src) {
    aoc_battery_params_init(&src.battery);
    auto* file = cmd->add_option("--instance", src.path, "Instance file (JSON)");
    auto* gen =
        cmd->add_flag("--gen-battery", src.generate, "Generate a battery-fleet instance");
    file->excludes(gen);
    cmd->add_option("--N", src.battery.num_agents, "Battery: number of agents");
    cmd->add_option("--T", src.battery.horizon, "Battery: horizon");
    cmd->add_option("--u-max", src.battery.u_max, "Battery: maximal charging speed");
    cmd->add_option("--s-in-lo", src.battery.s_in_lo, "Battery: initial SoC range low");
    cmd->add_option("--s-in-hi", src.battery.s_in_hi, "Battery: initial SoC range high");
    cmd->add_option("--s-max-lo", src.battery.s_max_lo, "Battery: max SoC range low");
    cmd->add_option("--s-max-hi", src.battery.s_max_hi, "Battery: max SoC range high");
    cmd->add_option("--alpha-lo", src.battery.alpha_lo, "Battery: tracking weight low");
    cmd->add_option("--alpha-hi", src.battery.alpha_hi, "Battery: tracking weight high");
    cmd->add_option("--beta-lo", src.battery.beta_lo, "Battery: terminal weight low");
    cmd->add_option("--beta-hi", src.battery.beta_hi, "Battery: terminal weight high");
    cmd->add_option("--target-scale", src.battery.target_scale, "Battery: target scale");
    cmd->add_flag("--smooth-target", [&src](int64_t count) { src.battery.smooth_target = count > 0; },
                  "Battery: drop the floor in the target profile");
    cmd->add_option("--gen-seed", src.battery.seed, "Battery: generator seed");
}

void load_instance(const InstanceSource& src, InstanceHandle& handle) {
    if (src.generate) {
        check(aoc_generate_battery(&src.battery, &handle.ptr));
    } else if (!src.path.empty()) {
        check(aoc_instance_read(src.path.c_str(), &handle.ptr));
    } else {
        std::fprintf(stderr, "error: provide --instance or --gen-battery\n");
        std::exit(5);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decomposition solvers for finite-state aggregative optimal control"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(aoc_version()));

    std::string outdir = default_outdir();
    app.add_option("--outdir", outdir, "Output directory (env AOC_OUT_DIR)")
        ->capture_default_str();

    // validate
    auto* validate = app.add_subcommand("validate", "Check an instance file");
    std::string validate_path;
    validate->add_option("--instance", validate_path, "Instance file (JSON)")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a battery-fleet instance file");
    aoc_battery_params gen_params;
    aoc_battery_params_init(&gen_params);
    std::string gen_out;
    generate->add_option("--out", gen_out, "Output instance path")->required();
    generate->add_option("--N", gen_params.num_agents, "Number of agents");
    generate->add_option("--T", gen_params.horizon, "Horizon");
    generate->add_option("--u-max", gen_params.u_max, "Maximal charging speed");
    generate->add_option("--s-in-lo", gen_params.s_in_lo, "Initial SoC range low");
    generate->add_option("--s-in-hi", gen_params.s_in_hi, "Initial SoC range high");
    generate->add_option("--s-max-lo", gen_params.s_max_lo, "Max SoC range low");
    generate->add_option("--s-max-hi", gen_params.s_max_hi, "Max SoC range high");
    generate->add_option("--alpha-lo", gen_params.alpha_lo, "Tracking weight low");
    generate->add_option("--alpha-hi", gen_params.alpha_hi, "Tracking weight high");
    generate->add_option("--beta-lo", gen_params.beta_lo, "Terminal weight low");
    generate->add_option("--beta-hi", gen_params.beta_hi, "Terminal weight high");
    generate->add_option("--target-scale", gen_params.target_scale, "Target scale");
    generate->add_flag("--smooth-target",
                       [&gen_params](int64_t count) { gen_params.smooth_target = count > 0; },
                       "Drop the floor in the target profile");
    generate->add_option("--gen-seed", gen_params.seed, "Generator seed");

    // fw
    auto* fw = app.add_subcommand("fw", "Frank-Wolfe on the relaxed problem");
    InstanceSource fw_src;
    add_instance_flags(fw, fw_src);
    aoc_fw_options fw_options;
    aoc_fw_options_init(&fw_options);
    std::string fw_csv;
    double fw_gap_tol = 1e-6;
    fw->add_option("--K", fw_options.iterations, "Iteration count");
    fw->add_option("--constant-step", fw_options.constant_step,
                   "Constant stepsize (default: 2/(k+2))");
    fw->add_option("--workers", fw_options.workers, "Worker threads");
    fw->add_flag("--timings", fw_options.include_timings, "Fill the wall_ms column");
    fw->add_option("--out-csv", fw_csv, "Per-iteration CSV path (default <outdir>/fw.csv)");
    fw->add_option("--gap-tol", fw_gap_tol, "Advisory gap tolerance to report");

    // sfw
    auto* sfw = app.add_subcommand("sfw", "Stochastic Frank-Wolfe");
    InstanceSource sfw_src;
    add_instance_flags(sfw, sfw_src);
    aoc_sfw_options sfw_options;
    aoc_sfw_options_init(&sfw_options);
    std::string sfw_csv, sfw_solution;
    sfw->add_option("--K", sfw_options.iterations, "Iteration count");
    sfw->add_option("--n", sfw_options.samples, "Samples per iteration (n_k)");
    sfw->add_option("--seed", sfw_options.master_seed, "Master seed");
    sfw->add_option("--constant-step", sfw_options.constant_step,
                    "Constant stepsize (default: 2/(k+2))");
    sfw->add_option("--jstar", sfw_options.jstar_reference,
                    "Relaxed-value reference for the gamma column");
    sfw->add_option("--workers", sfw_options.workers, "Worker threads");
    sfw->add_flag("--timings", sfw_options.include_timings, "Fill the wall_ms column");
    sfw->add_option("--out-csv", sfw_csv, "Per-iteration CSV path (default <outdir>/sfw.csv)");
    sfw->add_option("--write-solution", sfw_solution, "Write the final profile as JSON");

    // exact
    auto* exact = app.add_subcommand("exact", "Exhaustive reference solver");
    InstanceSource exact_src;
    add_instance_flags(exact, exact_src);
    double exact_cap = 1e7;
    std::string exact_solution;
    exact->add_option("--cap", exact_cap, "Combination cap");
    exact->add_option("--out-solution", exact_solution,
                      "Solution path (default <outdir>/exact_solution.json)");

    // export-micp
    auto* micp = app.add_subcommand("export-micp", "Write the MICP as an LP file");
    InstanceSource micp_src;
    add_instance_flags(micp, micp_src);
    std::string micp_out;
    micp->add_option("--out", micp_out, "LP path (default <outdir>/model.lp)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Report C0, C1, and theorem quantities");
    InstanceSource bounds_src;
    add_instance_flags(bounds, bounds_src);
    bool coarse = false;
    double coarse_d = -1.0, coarse_lt = -1.0;
    int bounds_k = 100, bounds_n = 20;
    double bounds_eps = 1.0;
    bounds->add_flag("--coarse", coarse, "Use coarse constants on quadratic blocks");
    bounds->add_option("--coarse-d", coarse_d,
                       "Coarse diameter (default for --gen-battery: u_max)");
    bounds->add_option("--coarse-ltilde", coarse_lt,
                       "Coarse gradient-Lipschitz (default for --gen-battery: 2*alpha_hi)");
    bounds->add_option("--K", bounds_k, "Iterations for the theorem block");
    bounds->add_option("--n", bounds_n, "Samples per iteration for the theorem block");
    bounds->add_option("--eps", bounds_eps, "Epsilon for the probability bound");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Multi-seed experiment orchestration");
    InstanceSource exp_src;
    add_instance_flags(experiment, exp_src);
    aoc_experiment_options exp_options;
    aoc_experiment_options_init(&exp_options);
    std::string exp_algo = "sfw";
    experiment->add_option("--algo", exp_algo, "fw | sfw | exact | export-micp")
        ->check(CLI::IsMember({"fw", "sfw", "exact", "export-micp"}));
    experiment->add_option("--K", exp_options.iterations, "Iteration count");
    experiment->add_option("--n", exp_options.samples, "Samples per iteration");
    experiment->add_option("--reps", exp_options.reps, "Independent repetitions");
    experiment->add_option("--seed", exp_options.master_seed, "Master seed (rep r: seed + r)");
    experiment->add_option("--fw-ref-K", exp_options.fw_reference_iters,
                           "Iterations of the relaxed reference run");
    experiment->add_option("--constant-step", exp_options.constant_step,
                           "Constant stepsize (default: 2/(k+2))");
    experiment->add_option("--workers", exp_options.workers, "Worker threads");
    experiment->add_option("--cap", exp_options.cap, "Combination cap (exact)");
    experiment->add_flag("--timings", exp_options.include_timings, "Fill wall_ms columns");

    // Global flags (--outdir) may appear after the subcommand name.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        InstanceHandle handle;
        check(aoc_instance_read(validate_path.c_str(), &handle.ptr));
        char* report = nullptr;
        check(aoc_instance_validate(handle.ptr, &report));
        if (report) {
            std::fprintf(stderr, "%s", report);
            aoc_string_free(report);
            return 2;
        }
        std::printf("ok: N=%d T=%d\n", aoc_instance_num_agents(handle.ptr),
                    aoc_instance_horizon(handle.ptr));
        return 0;
    }

    if (generate->parsed()) {
        InstanceHandle handle;
        check(aoc_generate_battery(&gen_params, &handle.ptr));
        check(aoc_instance_write(handle.ptr, gen_out.c_str()));
        std::printf("wrote %s (N=%d T=%d)\n", gen_out.c_str(),
                    aoc_instance_num_agents(handle.ptr), aoc_instance_horizon(handle.ptr));
        return 0;
    }

    if (fw->parsed()) {
        InstanceHandle handle;
        load_instance(fw_src, handle);
        aoc_fw_result* result = nullptr;
        check(aoc_fw_run(handle.ptr, &fw_options, &result));
        std::unique_ptr<aoc_fw_result, decltype(&aoc_fw_result_free)> guard(
            result, &aoc_fw_result_free);
        const std::string csv = fw_csv.empty() ? outdir + "/fw.csv" : fw_csv;
        check(aoc_fw_write_csv(result, csv.c_str()));
        std::printf("fw: K=%d final=%.12g certified_lower_bound=%.12g csv=%s\n",
                    fw_options.iterations, aoc_fw_final_value(result),
                    aoc_fw_lower_bound(result), csv.c_str());
        for (int32_t k = 0; k < aoc_fw_rows(result); ++k) {
            double gap = 0.0;
            check(aoc_fw_row(result, k, nullptr, &gap, nullptr));
            if (gap < fw_gap_tol) {
                std::printf("advisory: fw_gap < %.3g first reached at k=%d\n", fw_gap_tol, k);
                break;
            }
        }
        return 0;
    }

    if (sfw->parsed()) {
        InstanceHandle handle;
        load_instance(sfw_src, handle);
        aoc_sfw_result* result = nullptr;
        check(aoc_sfw_run(handle.ptr, &sfw_options, &result));
        std::unique_ptr<aoc_sfw_result, decltype(&aoc_sfw_result_free)> guard(
            result, &aoc_sfw_result_free);
        const std::string csv = sfw_csv.empty() ? outdir + "/sfw.csv" : sfw_csv;
        check(aoc_sfw_write_csv(result, csv.c_str()));
        if (!sfw_solution.empty()) check(aoc_sfw_write_solution(result, sfw_solution.c_str()));
        const double gamma = aoc_sfw_final_gamma(result);
        if (std::isnan(gamma))
            std::printf("sfw: K=%d final_J=%.12g csv=%s\n", sfw_options.iterations,
                        aoc_sfw_final_value(result), csv.c_str());
        else
            std::printf("sfw: K=%d final_J=%.12g final_gamma=%.12g csv=%s\n",
                        sfw_options.iterations, aoc_sfw_final_value(result), gamma,
                        csv.c_str());
        return 0;
    }

    if (exact->parsed()) {
        InstanceHandle handle;
        load_instance(exact_src, handle);
        aoc_exact_result* result = nullptr;
        check(aoc_exact_solve(handle.ptr, exact_cap, &result));
        std::unique_ptr<aoc_exact_result, decltype(&aoc_exact_result_free)> guard(
            result, &aoc_exact_result_free);
        const std::string path =
            exact_solution.empty() ? outdir + "/exact_solution.json" : exact_solution;
        check(aoc_exact_write_solution(result, path.c_str()));
        std::printf("exact: J*=%.12g combinations=%.0f solution=%s\n",
                    aoc_exact_value(result), aoc_exact_combinations(result), path.c_str());
        return 0;
    }

    if (micp->parsed()) {
        InstanceHandle handle;
        load_instance(micp_src, handle);
        aoc_micp* model = nullptr;
        check(aoc_micp_build(handle.ptr, &model));
        std::unique_ptr<aoc_micp, decltype(&aoc_micp_free)> guard(model, &aoc_micp_free);
        const std::string path = micp_out.empty() ? outdir + "/model.lp" : micp_out;
        check(aoc_micp_export_lp(model, path.c_str()));
        std::printf("export-micp: d(m)=%lld lp=%s\n",
                    static_cast<long long>(aoc_micp_var_count(model)), path.c_str());
        return 0;
    }

    if (bounds->parsed()) {
        InstanceHandle handle;
        load_instance(bounds_src, handle);
        char* text = nullptr;
        if (coarse) {
            if (coarse_d < 0.0)
                coarse_d = bounds_src.generate ? static_cast<double>(bounds_src.battery.u_max)
                                               : -1.0;
            if (coarse_lt < 0.0)
                coarse_lt = bounds_src.generate ? 2.0 * bounds_src.battery.alpha_hi : -1.0;
            if (coarse_d < 0.0 || coarse_lt < 0.0) {
                std::fprintf(stderr,
                             "error: --coarse on a file instance needs --coarse-d and "
                             "--coarse-ltilde\n");
                return 5;
            }
            check(aoc_bounds_report(handle.ptr, &coarse_d, &coarse_lt, bounds_k, bounds_n,
                                    bounds_eps, &text));
        } else {
            check(aoc_bounds_report(handle.ptr, nullptr, nullptr, bounds_k, bounds_n,
                                    bounds_eps, &text));
        }
        std::printf("%s", text);
        aoc_string_free(text);
        return 0;
    }

    if (experiment->parsed()) {
        InstanceHandle handle;
        load_instance(exp_src, handle);
        if (exp_algo == "fw") exp_options.algorithm = AOC_ALG_FW;
        else if (exp_algo == "sfw") exp_options.algorithm = AOC_ALG_SFW;
        else if (exp_algo == "exact") exp_options.algorithm = AOC_ALG_EXACT;
        else exp_options.algorithm = AOC_ALG_EXPORT_MICP;
        char* summary = nullptr;
        check(aoc_run_experiment(handle.ptr, &exp_options, outdir.c_str(), &summary));
        std::printf("%s", summary);
        aoc_string_free(summary);
        return 0;
    }

    return 0;
}
