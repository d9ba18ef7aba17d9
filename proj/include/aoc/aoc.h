/*
 * aoc — decomposition solvers for finite-state aggregative optimal control.
 *
 * C interface of the shared library. All entry points return an aoc_status;
 * on failure aoc_last_error() carries a thread-local message. Objects are
 * opaque handles released with their matching *_free function. Strings
 * returned through char** outputs are released with aoc_string_free.
 */
#ifndef AOC_H
#define AOC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aoc_status {
    AOC_OK = 0,
    AOC_ERR_ARGUMENT = 1,   /* null pointer / out-of-range parameter */
    AOC_ERR_VALIDATION = 2, /* instance violates a structural invariant */
    AOC_ERR_CAP = 3,        /* enumeration refused: combination cap exceeded */
    AOC_ERR_IO = 4,         /* file missing, unreadable, or malformed */
    AOC_ERR_INFEASIBLE = 5, /* trajectory or m-vector fails feasibility */
    AOC_ERR_INTERNAL = 6
} aoc_status;

const char* aoc_version(void);
const char* aoc_last_error(void);
void aoc_string_free(char* text);

/* ---- instances -------------------------------------------------------- */

typedef struct aoc_instance aoc_instance;

aoc_status aoc_instance_read(const char* path, aoc_instance** out);
aoc_status aoc_instance_write(const aoc_instance* instance, const char* path);
aoc_status aoc_instance_parse(const char* json_text, aoc_instance** out);
void aoc_instance_free(aoc_instance* instance);

int32_t aoc_instance_num_agents(const aoc_instance* instance);
int32_t aoc_instance_horizon(const aoc_instance* instance);

/* *report is NULL when the instance is valid, otherwise one line per
 * violation. Only malformed arguments make the call itself fail. */
aoc_status aoc_instance_validate(const aoc_instance* instance, char** report);

/* ---- battery-fleet generator ------------------------------------------ */

typedef struct aoc_battery_params {
    int32_t num_agents;
    int32_t horizon;
    int32_t u_max;
    int32_t s_in_lo, s_in_hi;
    int32_t s_max_lo, s_max_hi;
    double alpha_lo, alpha_hi;
    double beta_lo, beta_hi;
    double target_scale;
    int32_t smooth_target; /* 0: target = scale*floor(sin(pi t/12)+1) as printed */
    uint64_t seed;
} aoc_battery_params;

/* Reference setup: N=100, T=24, u_max=4, s_in in {0..20}, s_max in {20..40},
 * alpha in [1,2], beta in [0,1], scale 1.5, stepped target, seed 0. */
void aoc_battery_params_init(aoc_battery_params* params);
aoc_status aoc_generate_battery(const aoc_battery_params* params, aoc_instance** out);

/* ---- bounds ------------------------------------------------------------ */

typedef struct aoc_bounds aoc_bounds;

aoc_status aoc_compute_bounds(const aoc_instance* instance, aoc_bounds** out);
/* Coarse mode replaces the exact diameters / gradient-Lipschitz constants
 * on quadratic blocks (battery: diameter u_max, grad-Lipschitz 2*alpha_hi). */
aoc_status aoc_compute_bounds_coarse(const aoc_instance* instance, double diameter,
                                     double grad_lipschitz, aoc_bounds** out);
void aoc_bounds_free(aoc_bounds* bounds);

double aoc_bounds_c0(const aoc_bounds* bounds);
double aoc_bounds_c1(const aoc_bounds* bounds);
double aoc_bounds_gap(const aoc_bounds* bounds); /* C1/(2N) */

typedef struct aoc_theorem_report {
    double v_k;
    double m_k;
    double expectation_bound;  /* 4*C1/K */
    double probability_bound;  /* P[gamma_K < 4*C1/K + eps] >= this */
    int32_t k_in_range;        /* K within the certified range 1..2N */
} aoc_theorem_report;

aoc_status aoc_theorem_bounds(const aoc_bounds* bounds, int32_t num_agents, int32_t iterations,
                              int32_t samples, double epsilon, aoc_theorem_report* out);

/* Full text report: diameter statistics, C0, C1, gap bound, theorem block. */
aoc_status aoc_bounds_report(const aoc_instance* instance, const double* coarse_diameter,
                             const double* coarse_grad_lipschitz, int32_t iterations,
                             int32_t samples, double epsilon, char** text);

/* ---- Frank-Wolfe on the relaxed problem -------------------------------- */

typedef struct aoc_fw_options {
    int32_t iterations;
    double constant_step; /* < 0: use omega_k = 2/(k+2) */
    int32_t workers;
    int32_t include_timings;
} aoc_fw_options;

void aoc_fw_options_init(aoc_fw_options* options);

typedef struct aoc_fw_result aoc_fw_result;

aoc_status aoc_fw_run(const aoc_instance* instance, const aoc_fw_options* options,
                      aoc_fw_result** out);
void aoc_fw_result_free(aoc_fw_result* result);

double aoc_fw_final_value(const aoc_fw_result* result);
double aoc_fw_lower_bound(const aoc_fw_result* result);
int32_t aoc_fw_rows(const aoc_fw_result* result);
aoc_status aoc_fw_row(const aoc_fw_result* result, int32_t k, double* f_yk, double* fw_gap,
                      double* lower_bound);
/* CSV schema: k,f_yk,fw_gap,lower_bound,wall_ms */
aoc_status aoc_fw_write_csv(const aoc_fw_result* result, const char* path);

/* ---- stochastic Frank-Wolfe -------------------------------------------- */

typedef struct aoc_sfw_options {
    int32_t iterations;
    int32_t samples;       /* n_k */
    uint64_t master_seed;
    double constant_step;  /* < 0: omega_k = 2/(k+2) */
    double jstar_reference; /* gamma reference; NaN for none */
    int32_t workers;
    int32_t include_timings;
} aoc_sfw_options;

void aoc_sfw_options_init(aoc_sfw_options* options);

typedef struct aoc_sfw_result aoc_sfw_result;

aoc_status aoc_sfw_run(const aoc_instance* instance, const aoc_sfw_options* options,
                       aoc_sfw_result** out);
void aoc_sfw_result_free(aoc_sfw_result* result);

double aoc_sfw_final_value(const aoc_sfw_result* result);
double aoc_sfw_final_gamma(const aoc_sfw_result* result);
int32_t aoc_sfw_rows(const aoc_sfw_result* result);
aoc_status aoc_sfw_row(const aoc_sfw_result* result, int32_t index, int32_t* k, double* j_xk,
                       double* gamma_k, double* omega_k, int32_t* n_k, int32_t* swaps);
/* CSV schema: k,J_xk,gamma_k,omega_k,n_k,swaps,wall_ms */
aoc_status aoc_sfw_write_csv(const aoc_sfw_result* result, const char* path);
aoc_status aoc_sfw_write_solution(const aoc_sfw_result* result, const char* path);

/* ---- exact reference ---------------------------------------------------- */

typedef struct aoc_exact_result aoc_exact_result;

aoc_status aoc_exact_solve(const aoc_instance* instance, double cap, aoc_exact_result** out);
void aoc_exact_result_free(aoc_exact_result* result);

double aoc_exact_value(const aoc_exact_result* result);
double aoc_exact_combinations(const aoc_exact_result* result);
aoc_status aoc_exact_write_solution(const aoc_exact_result* result, const char* path);

/* ---- MICP export --------------------------------------------------------- */

typedef struct aoc_micp aoc_micp;

aoc_status aoc_micp_build(const aoc_instance* instance, aoc_micp** out);
void aoc_micp_free(aoc_micp* micp);

int64_t aoc_micp_var_count(const aoc_micp* micp);
aoc_status aoc_micp_export_lp(const aoc_micp* micp, const char* path);

/* ---- experiment orchestration -------------------------------------------- */

typedef enum aoc_algorithm {
    AOC_ALG_FW = 0,
    AOC_ALG_SFW = 1,
    AOC_ALG_EXACT = 2,
    AOC_ALG_EXPORT_MICP = 3
} aoc_algorithm;

typedef struct aoc_experiment_options {
    int32_t algorithm; /* aoc_algorithm */
    int32_t iterations;
    int32_t samples;
    int32_t reps;
    uint64_t master_seed;
    int32_t fw_reference_iters;
    double constant_step; /* < 0: omega_k = 2/(k+2) */
    int32_t workers;
    double cap;
    int32_t include_timings;
} aoc_experiment_options;

void aoc_experiment_options_init(aoc_experiment_options* options);

/* Writes the algorithm's output files under outdir and returns a text
 * recap. SFW repetitions run at seeds master_seed + r with a per-iteration
 * mean/std aggregate across reps. */
aoc_status aoc_run_experiment(const aoc_instance* instance,
                              const aoc_experiment_options* options, const char* outdir,
                              char** summary_text);

#ifdef __cplusplus
}
#endif

#endif /* AOC_H */
