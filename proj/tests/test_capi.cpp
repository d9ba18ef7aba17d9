#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <aoc/aoc.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Instance {
    aoc_instance* ptr = nullptr;
    ~Instance() { aoc_instance_free(ptr); }
};

void make_tiny(aoc_battery_params& params, uint64_t seed = 5) {
    aoc_battery_params_init(&params);
    params.num_agents = 2;
    params.horizon = 2;
    params.u_max = 1;
    params.s_in_lo = params.s_in_hi = 0;
    params.s_max_lo = params.s_max_hi = 2;
    params.target_scale = 1.0;
    params.seed = seed;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("version and error text are always available") {
    CHECK(std::strlen(aoc_version()) > 0);
    CHECK(aoc_last_error() != nullptr);
}

TEST_CASE("battery defaults match the reference setup") {
    aoc_battery_params params;
    aoc_battery_params_init(&params);
    CHECK(params.num_agents == 100);
    CHECK(params.horizon == 24);
    CHECK(params.u_max == 4);
    CHECK(params.s_in_lo == 0);
    CHECK(params.s_in_hi == 20);
    CHECK(params.s_max_lo == 20);
    CHECK(params.s_max_hi == 40);
    CHECK(params.alpha_lo == 1.0);
    CHECK(params.alpha_hi == 2.0);
    CHECK(params.beta_lo == 0.0);
    CHECK(params.beta_hi == 1.0);
    CHECK(params.target_scale == 1.5);
    CHECK(params.smooth_target == 0);
}

TEST_CASE("generate, validate, write, read round trip") {
    aoc_battery_params params;
    make_tiny(params);
    Instance inst;
    REQUIRE(aoc_generate_battery(&params, &inst.ptr) == AOC_OK);
    CHECK(aoc_instance_num_agents(inst.ptr) == 2);
    CHECK(aoc_instance_horizon(inst.ptr) == 2);

    char* issues = reinterpret_cast<char*>(1); // non-null sentinel
    REQUIRE(aoc_instance_validate(inst.ptr, &issues) == AOC_OK);
    CHECK(issues == nullptr);

    const fs::path dir = fresh_dir("aoc_capi_rt");
    const std::string path = (dir / "tiny.json").string();
    REQUIRE(aoc_instance_write(inst.ptr, path.c_str()) == AOC_OK);
    Instance reread;
    REQUIRE(aoc_instance_read(path.c_str(), &reread.ptr) == AOC_OK);
    CHECK(aoc_instance_num_agents(reread.ptr) == 2);

    // Writing again must be byte-identical (value-identical round trip).
    const std::string path2 = (dir / "tiny2.json").string();
    REQUIRE(aoc_instance_write(reread.ptr, path2.c_str()) == AOC_OK);
    CHECK(slurp(path) == slurp(path2));
    fs::remove_all(dir);
}

TEST_CASE("status codes: argument, io, validation, cap") {
    CHECK(aoc_instance_read(nullptr, nullptr) == AOC_ERR_ARGUMENT);
    CHECK(std::strlen(aoc_last_error()) > 0);

    Instance missing;
    CHECK(aoc_instance_read("/nonexistent/inst.json", &missing.ptr) == AOC_ERR_IO);

    Instance broken;
    CHECK(aoc_instance_parse("{ not json", &broken.ptr) == AOC_ERR_IO);

    // Structurally parseable but invalid: empty initial set.
    Instance invalid;
    const char* bad = R"({"N":1,"T":1,"social":[{"kind":"zero"},{"kind":"zero"},
        {"kind":"identity"}],"agents":[{"states":["a"],"initial_states":[],
        "controls":["u"],"feasible":[[[0]],[[0]]],"transitions":[[[0]]],
        "contributions":[[[0.0]],[[0.0]]],"individual_costs":[[[0.0]],[[0.0]]]}]})";
    REQUIRE(aoc_instance_parse(bad, &invalid.ptr) == AOC_OK);
    char* report = nullptr;
    REQUIRE(aoc_instance_validate(invalid.ptr, &report) == AOC_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("Assumption I") != std::string::npos);
    aoc_string_free(report);

    // Solvers refuse invalid instances with the validation status.
    aoc_fw_options fw_options;
    aoc_fw_options_init(&fw_options);
    aoc_fw_result* fw = nullptr;
    CHECK(aoc_fw_run(invalid.ptr, &fw_options, &fw) == AOC_ERR_VALIDATION);

    // The full fleet blows the enumeration cap.
    aoc_battery_params params;
    aoc_battery_params_init(&params);
    Instance fleet;
    REQUIRE(aoc_generate_battery(&params, &fleet.ptr) == AOC_OK);
    aoc_exact_result* exact = nullptr;
    CHECK(aoc_exact_solve(fleet.ptr, 1e6, &exact) == AOC_ERR_CAP);
    CHECK(std::string(aoc_last_error()).find("exceed") != std::string::npos);
}

TEST_CASE("bounds: coarse gap, theorem report, text report") {
    aoc_battery_params params;
    aoc_battery_params_init(&params);
    params.seed = 1;
    Instance fleet;
    REQUIRE(aoc_generate_battery(&params, &fleet.ptr) == AOC_OK);

    aoc_bounds* coarse = nullptr;
    REQUIRE(aoc_compute_bounds_coarse(fleet.ptr, 4.0, 4.0, &coarse) == AOC_OK);
    CHECK(aoc_bounds_gap(coarse) == 7.68);
    CHECK(aoc_bounds_c1(coarse) == 1536.0);

    aoc_bounds* exact = nullptr;
    REQUIRE(aoc_compute_bounds(fleet.ptr, &exact) == AOC_OK);
    CHECK(aoc_bounds_c1(exact) <= aoc_bounds_c1(coarse));
    CHECK(aoc_bounds_c0(exact) > 0.0);

    aoc_theorem_report theorem{};
    REQUIRE(aoc_theorem_bounds(coarse, 100, 100, 20, 1.0, &theorem) == AOC_OK);
    CHECK(theorem.expectation_bound == doctest::Approx(4.0 * 1536.0 / 100.0));
    CHECK(theorem.k_in_range == 1);
    REQUIRE(aoc_theorem_bounds(coarse, 100, 500, 20, 1.0, &theorem) == AOC_OK);
    CHECK(theorem.k_in_range == 0);

    char* text = nullptr;
    const double d = 4.0, lt = 4.0;
    REQUIRE(aoc_bounds_report(fleet.ptr, &d, &lt, 100, 20, 1.0, &text) == AOC_OK);
    CHECK(std::string(text).find("7.68") != std::string::npos);
    aoc_string_free(text);

    aoc_bounds_free(coarse);
    aoc_bounds_free(exact);
}

TEST_CASE("fw run: rows, getters, csv") {
    aoc_battery_params params;
    make_tiny(params);
    Instance inst;
    REQUIRE(aoc_generate_battery(&params, &inst.ptr) == AOC_OK);

    aoc_fw_options options;
    aoc_fw_options_init(&options);
    options.iterations = 8;
    aoc_fw_result* result = nullptr;
    REQUIRE(aoc_fw_run(inst.ptr, &options, &result) == AOC_OK);
    CHECK(aoc_fw_rows(result) == 8);
    CHECK(aoc_fw_lower_bound(result) <= aoc_fw_final_value(result) + 1e-9);
    double f = 0.0, gap = 0.0, lb = 0.0;
    REQUIRE(aoc_fw_row(result, 0, &f, &gap, &lb) == AOC_OK);
    CHECK(gap >= -1e-9);
    CHECK(aoc_fw_row(result, 8, &f, &gap, &lb) == AOC_ERR_ARGUMENT);

    const fs::path dir = fresh_dir("aoc_capi_fw");
    const std::string csv = (dir / "fw.csv").string();
    REQUIRE(aoc_fw_write_csv(result, csv.c_str()) == AOC_OK);
    CHECK(slurp(csv).rfind("k,f_yk,fw_gap,lower_bound,wall_ms\n", 0) == 0);
    aoc_fw_result_free(result);
    fs::remove_all(dir);
}

TEST_CASE("sfw run: determinism, monotonicity, csv, solution") {
    aoc_battery_params params;
    make_tiny(params, 11);
    Instance inst;
    REQUIRE(aoc_generate_battery(&params, &inst.ptr) == AOC_OK);

    aoc_sfw_options options;
    aoc_sfw_options_init(&options);
    options.iterations = 12;
    options.samples = 3;
    options.master_seed = 21;
    options.jstar_reference = 0.0;

    aoc_sfw_result* a = nullptr;
    REQUIRE(aoc_sfw_run(inst.ptr, &options, &a) == AOC_OK);
    CHECK(aoc_sfw_rows(a) == 13);

    double prev = 0.0;
    for (int32_t k = 0; k < aoc_sfw_rows(a); ++k) {
        int32_t kk = 0, n = 0, swaps = 0;
        double j = 0.0, gamma = 0.0, omega = 0.0;
        REQUIRE(aoc_sfw_row(a, k, &kk, &j, &gamma, &omega, &n, &swaps) == AOC_OK);
        CHECK(kk == k);
        CHECK(gamma == j); // reference 0
        if (k > 0) CHECK(j <= prev + 1e-12);
        prev = j;
    }

    options.workers = 8;
    aoc_sfw_result* b = nullptr;
    REQUIRE(aoc_sfw_run(inst.ptr, &options, &b) == AOC_OK);
    CHECK(aoc_sfw_final_value(a) == aoc_sfw_final_value(b));
    CHECK(aoc_sfw_final_gamma(a) == aoc_sfw_final_gamma(b));

    const fs::path dir = fresh_dir("aoc_capi_sfw");
    const std::string csv_a = (dir / "a.csv").string();
    const std::string csv_b = (dir / "b.csv").string();
    REQUIRE(aoc_sfw_write_csv(a, csv_a.c_str()) == AOC_OK);
    REQUIRE(aoc_sfw_write_csv(b, csv_b.c_str()) == AOC_OK);
    CHECK(slurp(csv_a) == slurp(csv_b));

    const std::string solution = (dir / "sol.json").string();
    REQUIRE(aoc_sfw_write_solution(a, solution.c_str()) == AOC_OK);
    CHECK(slurp(solution).find("\"controls\"") != std::string::npos);

    aoc_sfw_result_free(a);
    aoc_sfw_result_free(b);
    fs::remove_all(dir);
}

TEST_CASE("exact solve and solution output") {
    aoc_battery_params params;
    make_tiny(params, 3);
    Instance inst;
    REQUIRE(aoc_generate_battery(&params, &inst.ptr) == AOC_OK);

    aoc_exact_result* exact = nullptr;
    REQUIRE(aoc_exact_solve(inst.ptr, 1e7, &exact) == AOC_OK);
    CHECK(aoc_exact_combinations(exact) > 0.0);
    CHECK(std::isfinite(aoc_exact_value(exact)));

    // The exact value never exceeds any solver value.
    aoc_sfw_options options;
    aoc_sfw_options_init(&options);
    options.iterations = 10;
    options.samples = 4;
    aoc_sfw_result* sfw = nullptr;
    REQUIRE(aoc_sfw_run(inst.ptr, &options, &sfw) == AOC_OK);
    CHECK(aoc_exact_value(exact) <= aoc_sfw_final_value(sfw) + 1e-9);
    aoc_sfw_result_free(sfw);

    const fs::path dir = fresh_dir("aoc_capi_exact");
    const std::string path = (dir / "sol.json").string();
    REQUIRE(aoc_exact_write_solution(exact, path.c_str()) == AOC_OK);
    CHECK(slurp(path).find("\"value\"") != std::string::npos);
    aoc_exact_result_free(exact);
    fs::remove_all(dir);
}

TEST_CASE("micp build and export") {
    aoc_battery_params params;
    make_tiny(params);
    Instance inst;
    REQUIRE(aoc_generate_battery(&params, &inst.ptr) == AOC_OK);

    aoc_micp* micp = nullptr;
    REQUIRE(aoc_micp_build(inst.ptr, &micp) == AOC_OK);
    CHECK(aoc_micp_var_count(micp) == 2 * 3 * 5);

    const fs::path dir = fresh_dir("aoc_capi_micp");
    const std::string path = (dir / "model.lp").string();
    REQUIRE(aoc_micp_export_lp(micp, path.c_str()) == AOC_OK);
    const std::string text = slurp(path);
    CHECK(text.rfind("\\ aggregative optimal control MICP export", 0) == 0);
    CHECK(text.find("Generals") != std::string::npos);
    aoc_micp_free(micp);
    fs::remove_all(dir);
}

TEST_CASE("experiment through the C API") {
    aoc_battery_params params;
    make_tiny(params, 8);
    Instance inst;
    REQUIRE(aoc_generate_battery(&params, &inst.ptr) == AOC_OK);

    aoc_experiment_options options;
    aoc_experiment_options_init(&options);
    options.iterations = 6;
    options.samples = 2;
    options.reps = 2;
    options.fw_reference_iters = 20;

    const fs::path dir = fresh_dir("aoc_capi_exp");
    char* summary = nullptr;
    REQUIRE(aoc_run_experiment(inst.ptr, &options, dir.string().c_str(), &summary) == AOC_OK);
    REQUIRE(summary != nullptr);
    CHECK(std::string(summary).find("final gamma") != std::string::npos);
    aoc_string_free(summary);
    CHECK(fs::exists(dir / "fw_reference.csv"));
    CHECK(fs::exists(dir / "sfw_rep0.csv"));
    CHECK(fs::exists(dir / "sfw_rep1.csv"));
    CHECK(fs::exists(dir / "sfw_summary.csv"));
    CHECK(fs::exists(dir / "sfw_aggregate.csv"));
    fs::remove_all(dir);
}
