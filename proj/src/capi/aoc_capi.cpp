#include "aoc/aoc.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "core/battery.hpp"
#include "core/errors.hpp"
#include "core/exact.hpp"
#include "core/experiment.hpp"
#include "core/fw.hpp"
#include "core/instance.hpp"
#include "core/instance_io.hpp"
#include "core/sfw.hpp"
#include "core/social.hpp"

namespace {

thread_local std::string tl_error;

void set_error(const std::string& message) { tl_error = message; }

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

// Runs fn, translating C++ exceptions into status codes + last-error text.
template <typename Fn>
aoc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const aoc::InvalidArgumentError& e) {
        set_error(e.what());
        return AOC_ERR_ARGUMENT;
    } catch (const aoc::ValidationError& e) {
        set_error(e.what());
        return AOC_ERR_VALIDATION;
    } catch (const aoc::CapExceededError& e) {
        set_error(e.what());
        return AOC_ERR_CAP;
    } catch (const aoc::IoError& e) {
        set_error(e.what());
        return AOC_ERR_IO;
    } catch (const aoc::FeasibilityError& e) {
        set_error(e.what());
        return AOC_ERR_INFEASIBLE;
    } catch (const std::exception& e) {
        set_error(e.what());
        return AOC_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return AOC_ERR_INTERNAL;
    }
}

aoc_status require(bool ok, const char* what) {
    if (!ok) {
        set_error(std::string("invalid argument: ") + what);
        return AOC_ERR_ARGUMENT;
    }
    return AOC_OK;
}

#define AOC_REQUIRE(cond)                                             \
    do {                                                              \
        aoc_status status_ = require((cond), #cond);                  \
        if (status_ != AOC_OK) return status_;                        \
    } while (0)

} // namespace

struct aoc_instance {
    aoc::OcInstance value;
};

struct aoc_bounds {
    aoc::BoundReport value;
};

struct aoc_fw_result {
    aoc::RelaxedRunResult value;
    bool timings = false;
};

struct aoc_sfw_result {
    aoc::SfwRunResult value;
    aoc::OcInstance instance; // label context for solution output
    bool timings = false;
};

struct aoc_exact_result {
    aoc::ExactResult value;
    aoc::OcInstance instance;
};

struct aoc_micp {
    aoc::MicpModel value;
};

extern "C" {

const char* aoc_version(void) { return "0.1.0"; }

const char* aoc_last_error(void) { return tl_error.c_str(); }

void aoc_string_free(char* text) { delete[] text; }

/* ---- instances -------------------------------------------------------- */

aoc_status aoc_instance_read(const char* path, aoc_instance** out) {
    AOC_REQUIRE(path != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new aoc_instance{aoc::read_instance(path)};
        return AOC_OK;
    });
}

aoc_status aoc_instance_write(const aoc_instance* instance, const char* path) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(path != nullptr);
    return guarded([&] {
        aoc::write_instance(instance->value, path);
        return AOC_OK;
    });
}

aoc_status aoc_instance_parse(const char* json_text, aoc_instance** out) {
    AOC_REQUIRE(json_text != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new aoc_instance{aoc::instance_from_json(json_text)};
        return AOC_OK;
    });
}

void aoc_instance_free(aoc_instance* instance) { delete instance; }

int32_t aoc_instance_num_agents(const aoc_instance* instance) {
    return instance ? instance->value.num_agents : -1;
}

int32_t aoc_instance_horizon(const aoc_instance* instance) {
    return instance ? instance->value.horizon : -1;
}

aoc_status aoc_instance_validate(const aoc_instance* instance, char** report) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(report != nullptr);
    return guarded([&] {
        const auto issues = aoc::validate_instance(instance->value);
        *report = issues.empty() ? nullptr : copy_string(aoc::format_issues(issues));
        return AOC_OK;
    });
}

/* ---- battery ----------------------------------------------------------- */

void aoc_battery_params_init(aoc_battery_params* params) {
    if (!params) return;
    const aoc::BatteryParams defaults;
    params->num_agents = defaults.num_agents;
    params->horizon = defaults.horizon;
    params->u_max = defaults.u_max;
    params->s_in_lo = defaults.s_in_lo;
    params->s_in_hi = defaults.s_in_hi;
    params->s_max_lo = defaults.s_max_lo;
    params->s_max_hi = defaults.s_max_hi;
    params->alpha_lo = defaults.alpha_lo;
    params->alpha_hi = defaults.alpha_hi;
    params->beta_lo = defaults.beta_lo;
    params->beta_hi = defaults.beta_hi;
    params->target_scale = defaults.target_scale;
    params->smooth_target = defaults.smooth_target ? 1 : 0;
    params->seed = defaults.seed;
}

aoc_status aoc_generate_battery(const aoc_battery_params* params, aoc_instance** out) {
    AOC_REQUIRE(params != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        aoc::BatteryParams p;
        p.num_agents = params->num_agents;
        p.horizon = params->horizon;
        p.u_max = params->u_max;
        p.s_in_lo = params->s_in_lo;
        p.s_in_hi = params->s_in_hi;
        p.s_max_lo = params->s_max_lo;
        p.s_max_hi = params->s_max_hi;
        p.alpha_lo = params->alpha_lo;
        p.alpha_hi = params->alpha_hi;
        p.beta_lo = params->beta_lo;
        p.beta_hi = params->beta_hi;
        p.target_scale = params->target_scale;
        p.smooth_target = params->smooth_target != 0;
        p.seed = params->seed;
        *out = new aoc_instance{aoc::generate_battery(p)};
        return AOC_OK;
    });
}

/* ---- bounds ------------------------------------------------------------- */

aoc_status aoc_compute_bounds(const aoc_instance* instance, aoc_bounds** out) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        aoc::require_valid(instance->value);
        *out = new aoc_bounds{aoc::compute_constants(instance->value)};
        return AOC_OK;
    });
}

aoc_status aoc_compute_bounds_coarse(const aoc_instance* instance, double diameter,
                                     double grad_lipschitz, aoc_bounds** out) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(out != nullptr);
    AOC_REQUIRE(diameter >= 0.0);
    AOC_REQUIRE(grad_lipschitz >= 0.0);
    return guarded([&] {
        aoc::require_valid(instance->value);
        *out = new aoc_bounds{aoc::compute_constants(
            instance->value, aoc::CoarseBounds{diameter, grad_lipschitz})};
        return AOC_OK;
    });
}

void aoc_bounds_free(aoc_bounds* bounds) { delete bounds; }

double aoc_bounds_c0(const aoc_bounds* bounds) { return bounds ? bounds->value.c0 : NAN; }
double aoc_bounds_c1(const aoc_bounds* bounds) { return bounds ? bounds->value.c1 : NAN; }
double aoc_bounds_gap(const aoc_bounds* bounds) {
    return bounds ? bounds->value.gap_bound : NAN;
}

aoc_status aoc_theorem_bounds(const aoc_bounds* bounds, int32_t num_agents, int32_t iterations,
                              int32_t samples, double epsilon, aoc_theorem_report* out) {
    AOC_REQUIRE(bounds != nullptr);
    AOC_REQUIRE(out != nullptr);
    AOC_REQUIRE(num_agents >= 1);
    return guarded([&] {
        aoc::SfwSchedule schedule;
        schedule.iterations = iterations;
        schedule.samples = samples;
        const aoc::TheoremBounds t =
            aoc::theorem_bounds(bounds->value.c0, bounds->value.c1, num_agents, schedule,
                                epsilon);
        out->v_k = t.v_k;
        out->m_k = t.m_k;
        out->expectation_bound = t.expectation_bound;
        out->probability_bound = t.probability_bound;
        out->k_in_range = t.k_in_certified_range ? 1 : 0;
        return AOC_OK;
    });
}

aoc_status aoc_bounds_report(const aoc_instance* instance, const double* coarse_diameter,
                             const double* coarse_grad_lipschitz, int32_t iterations,
                             int32_t samples, double epsilon, char** text) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(text != nullptr);
    AOC_REQUIRE((coarse_diameter == nullptr) == (coarse_grad_lipschitz == nullptr));
    return guarded([&] {
        std::optional<aoc::CoarseBounds> coarse;
        if (coarse_diameter)
            coarse = aoc::CoarseBounds{*coarse_diameter, *coarse_grad_lipschitz};
        *text = copy_string(
            aoc::bounds_report_text(instance->value, coarse, iterations, samples, epsilon));
        return AOC_OK;
    });
}

/* ---- fw ------------------------------------------------------------------ */

void aoc_fw_options_init(aoc_fw_options* options) {
    if (!options) return;
    options->iterations = 500;
    options->constant_step = -1.0;
    options->workers = 1;
    options->include_timings = 0;
}

aoc_status aoc_fw_run(const aoc_instance* instance, const aoc_fw_options* options,
                      aoc_fw_result** out) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(options != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        aoc::require_valid(instance->value);
        aoc::StepRule step{options->constant_step};
        auto result = aoc::fw_run(instance->value, options->iterations, step,
                                  options->workers, options->include_timings != 0);
        *out = new aoc_fw_result{std::move(result), options->include_timings != 0};
        return AOC_OK;
    });
}

void aoc_fw_result_free(aoc_fw_result* result) { delete result; }

double aoc_fw_final_value(const aoc_fw_result* result) {
    return result ? result->value.final_value : NAN;
}

double aoc_fw_lower_bound(const aoc_fw_result* result) {
    return result ? result->value.certified_lower_bound : NAN;
}

int32_t aoc_fw_rows(const aoc_fw_result* result) {
    return result ? static_cast<int32_t>(result->value.iterates.size()) : -1;
}

aoc_status aoc_fw_row(const aoc_fw_result* result, int32_t k, double* f_yk, double* fw_gap,
                      double* lower_bound) {
    AOC_REQUIRE(result != nullptr);
    AOC_REQUIRE(k >= 0 && k < static_cast<int32_t>(result->value.iterates.size()));
    const aoc::FwIterate& row = result->value.iterates[k];
    if (f_yk) *f_yk = row.value;
    if (fw_gap) *fw_gap = row.gap;
    if (lower_bound) *lower_bound = row.lower_bound;
    return AOC_OK;
}

aoc_status aoc_fw_write_csv(const aoc_fw_result* result, const char* path) {
    AOC_REQUIRE(result != nullptr);
    AOC_REQUIRE(path != nullptr);
    return guarded([&] {
        aoc::write_fw_csv(result->value, path, result->timings);
        return AOC_OK;
    });
}

/* ---- sfw ------------------------------------------------------------------ */

void aoc_sfw_options_init(aoc_sfw_options* options) {
    if (!options) return;
    options->iterations = 100;
    options->samples = 20;
    options->master_seed = 0;
    options->constant_step = -1.0;
    options->jstar_reference = NAN;
    options->workers = 1;
    options->include_timings = 0;
}

aoc_status aoc_sfw_run(const aoc_instance* instance, const aoc_sfw_options* options,
                       aoc_sfw_result** out) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(options != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        aoc::require_valid(instance->value);
        aoc::SfwSchedule schedule;
        schedule.iterations = options->iterations;
        schedule.samples = options->samples;
        schedule.master_seed = options->master_seed;
        schedule.step = aoc::StepRule{options->constant_step};
        auto result = aoc::sfw_run(instance->value, schedule, options->workers,
                                   options->jstar_reference, options->include_timings != 0);
        *out = new aoc_sfw_result{std::move(result), instance->value,
                                  options->include_timings != 0};
        return AOC_OK;
    });
}

void aoc_sfw_result_free(aoc_sfw_result* result) { delete result; }

double aoc_sfw_final_value(const aoc_sfw_result* result) {
    return result ? result->value.best_value : NAN;
}

double aoc_sfw_final_gamma(const aoc_sfw_result* result) {
    return result ? result->value.gap_vs_relaxed : NAN;
}

int32_t aoc_sfw_rows(const aoc_sfw_result* result) {
    return result ? static_cast<int32_t>(result->value.iterates.size()) : -1;
}

aoc_status aoc_sfw_row(const aoc_sfw_result* result, int32_t index, int32_t* k, double* j_xk,
                       double* gamma_k, double* omega_k, int32_t* n_k, int32_t* swaps) {
    AOC_REQUIRE(result != nullptr);
    AOC_REQUIRE(index >= 0 && index < static_cast<int32_t>(result->value.iterates.size()));
    const aoc::SfwIterate& row = result->value.iterates[index];
    if (k) *k = row.k;
    if (j_xk) *j_xk = row.value;
    if (gamma_k) *gamma_k = row.gamma;
    if (omega_k) *omega_k = row.omega;
    if (n_k) *n_k = row.n;
    if (swaps) *swaps = row.swaps;
    return AOC_OK;
}

aoc_status aoc_sfw_write_csv(const aoc_sfw_result* result, const char* path) {
    AOC_REQUIRE(result != nullptr);
    AOC_REQUIRE(path != nullptr);
    return guarded([&] {
        aoc::write_sfw_csv(result->value, path, result->timings);
        return AOC_OK;
    });
}

aoc_status aoc_sfw_write_solution(const aoc_sfw_result* result, const char* path) {
    AOC_REQUIRE(result != nullptr);
    AOC_REQUIRE(path != nullptr);
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw aoc::IoError(std::string("cannot write file: ") + path);
        out << aoc::solution_to_json(result->instance, result->value.best,
                                     result->value.best_value)
            << "\n";
        return AOC_OK;
    });
}

/* ---- exact ----------------------------------------------------------------- */

aoc_status aoc_exact_solve(const aoc_instance* instance, double cap, aoc_exact_result** out) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(out != nullptr);
    AOC_REQUIRE(cap > 0.0);
    return guarded([&] {
        auto result = aoc::enumerate_optimum(instance->value, cap);
        *out = new aoc_exact_result{std::move(result), instance->value};
        return AOC_OK;
    });
}

void aoc_exact_result_free(aoc_exact_result* result) { delete result; }

double aoc_exact_value(const aoc_exact_result* result) {
    return result ? result->value.value : NAN;
}

double aoc_exact_combinations(const aoc_exact_result* result) {
    return result ? result->value.combinations : NAN;
}

aoc_status aoc_exact_write_solution(const aoc_exact_result* result, const char* path) {
    AOC_REQUIRE(result != nullptr);
    AOC_REQUIRE(path != nullptr);
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw aoc::IoError(std::string("cannot write file: ") + path);
        out << aoc::solution_to_json(result->instance, result->value.solution,
                                     result->value.value)
            << "\n";
        return AOC_OK;
    });
}

/* ---- micp ------------------------------------------------------------------- */

aoc_status aoc_micp_build(const aoc_instance* instance, aoc_micp** out) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new aoc_micp{aoc::build_micp(instance->value)};
        return AOC_OK;
    });
}

void aoc_micp_free(aoc_micp* micp) { delete micp; }

int64_t aoc_micp_var_count(const aoc_micp* micp) {
    return micp ? micp->value.var_count() : -1;
}

aoc_status aoc_micp_export_lp(const aoc_micp* micp, const char* path) {
    AOC_REQUIRE(micp != nullptr);
    AOC_REQUIRE(path != nullptr);
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw aoc::IoError(std::string("cannot write file: ") + path);
        out << aoc::export_lp(micp->value);
        if (!out) throw aoc::IoError(std::string("write failed: ") + path);
        return AOC_OK;
    });
}

/* ---- experiment ---------------------------------------------------------------- */

void aoc_experiment_options_init(aoc_experiment_options* options) {
    if (!options) return;
    options->algorithm = AOC_ALG_SFW;
    options->iterations = 100;
    options->samples = 20;
    options->reps = 50;
    options->master_seed = 0;
    options->fw_reference_iters = 500;
    options->constant_step = -1.0;
    options->workers = 1;
    options->cap = 1e7;
    options->include_timings = 0;
}

aoc_status aoc_run_experiment(const aoc_instance* instance,
                              const aoc_experiment_options* options, const char* outdir,
                              char** summary_text) {
    AOC_REQUIRE(instance != nullptr);
    AOC_REQUIRE(options != nullptr);
    AOC_REQUIRE(outdir != nullptr);
    AOC_REQUIRE(options->algorithm >= AOC_ALG_FW && options->algorithm <= AOC_ALG_EXPORT_MICP);
    return guarded([&] {
        aoc::ExperimentConfig config;
        config.algorithm = static_cast<aoc::Algorithm>(options->algorithm);
        config.iterations = options->iterations;
        config.samples = options->samples;
        config.reps = options->reps;
        config.master_seed = options->master_seed;
        config.fw_reference_iters = options->fw_reference_iters;
        config.step = aoc::StepRule{options->constant_step};
        config.workers = options->workers;
        config.cap = options->cap;
        config.include_timings = options->include_timings != 0;
        const aoc::ExperimentSummary summary =
            aoc::run_experiment(instance->value, config, outdir);
        if (summary_text) *summary_text = copy_string(summary.text);
        return AOC_OK;
    });
}

} /* extern "C" */
