#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "accretia/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void apply_seed_override(accretia::ScenarioConfig& config) {
    const char* env = std::getenv("ACCRETIA_SEED");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const long long seed = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0') {
        throw accretia::ConfigError("ACCRETIA_SEED: not an integer: " + std::string(env));
    }
    config.seed = seed;
}

int report_result(const accretia::ScenarioResult& result) {
    for (const accretia::CheckResult& check : result.checks) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << result.name << "/" << check.name
                  << " worst_residual=" << accretia::format_double(check.worst_residual)
                  << " tolerance=" << accretia::format_double(check.tolerance) << "\n";
    }
    for (const std::string& path : result.written_files) {
        std::cout << "wrote " << path << "\n";
    }
    if (!result.all_passed) {
        for (const accretia::CheckResult& check : result.checks) {
            if (!check.passed) {
                std::cout << "check failure: " << result.name << "/" << check.name << "\n";
            }
        }
        return kExitCheckFailure;
    }
    return kExitPass;
}

int run_configs(const std::vector<accretia::ScenarioConfig>& configs, const std::string& out_dir,
                int jobs) {
    int exit_code = kExitPass;
    for (const accretia::ScenarioConfig& config : configs) {
        const accretia::ScenarioResult result = accretia::run_scenario(config, out_dir, jobs);
        exit_code = std::max(exit_code, report_result(result));
    }
    if (exit_code == kExitPass) std::cout << "all checks passed\n";
    return exit_code;
}

std::vector<accretia::ScenarioConfig> builtin_check_configs() {
    using accretia::OperatorSpec;
    using accretia::OutputKind;

    accretia::ScenarioConfig cubes;
    cubes.name = "check_cubes";
    cubes.op.kind = OperatorSpec::Kind::diag_sectorial;
    cubes.op.moduli = {1.0, 8.0, 27.0};
    cubes.op.angles = {0.0, 0.0, 0.0};
    cubes.op.omega = 0.0;
    cubes.alpha_grid = {0.3, 0.5, 0.74, 0.76};
    cubes.t_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    cubes.outputs = {OutputKind::spectrum_svg, OutputKind::alpha_sweep_csv,
                     OutputKind::solve_report_json, OutputKind::probe_csv};

    accretia::ScenarioConfig laplacian;
    laplacian.name = "check_laplacian";
    laplacian.op.kind = OperatorSpec::Kind::laplacian_1d;
    laplacian.op.n = 4;
    laplacian.op.h = 1.0;
    laplacian.alpha_grid = {0.25, 0.5, 0.7};
    laplacian.t_grid = {0.0, 0.5, 1.0};
    laplacian.outputs = {OutputKind::alpha_sweep_csv, OutputKind::solve_report_json};

    accretia::ScenarioConfig rotated;
    rotated.name = "check_rotated";
    rotated.op.kind = OperatorSpec::Kind::rotated;
    rotated.op.phi = std::numbers::pi / 6.0;
    rotated.op.inner = std::make_shared<OperatorSpec>();
    rotated.op.inner->kind = OperatorSpec::Kind::laplacian_1d;
    rotated.op.inner->n = 3;
    rotated.op.inner->h = 1.0;
    rotated.alpha_grid = {0.4, 0.68, 0.72};
    rotated.outputs = {OutputKind::spectrum_svg, OutputKind::alpha_sweep_csv};

    return {cubes, laplacian, rotated};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of fractional powers of the third-order block "
                 "linearization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "./out";
    int jobs = 1;
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    int sweep_steps = 0;

    CLI::App* run_cmd = app.add_subcommand("run", "Execute one scenario config");
    run_cmd->add_option("config", config_path, "Scenario config (TOML)")->required();
    run_cmd->add_option("--out", out_dir, "Output directory");
    run_cmd->add_option("--jobs", jobs, "Parallel alpha evaluations")->check(CLI::PositiveNumber);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep-alpha", "Run a config over a uniform alpha grid");
    sweep_cmd->add_option("config", config_path, "Scenario config (TOML)")->required();
    sweep_cmd->add_option("--from", sweep_from, "First alpha")->required();
    sweep_cmd->add_option("--to", sweep_to, "Last alpha")->required();
    sweep_cmd->add_option("--steps", sweep_steps, "Grid size")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory");
    sweep_cmd->add_option("--jobs", jobs, "Parallel alpha evaluations")->check(CLI::PositiveNumber);

    CLI::App* check_cmd = app.add_subcommand("check", "Run the built-in scenarios");
    check_cmd->add_option("--out", out_dir, "Output directory");
    check_cmd->add_option("--jobs", jobs, "Parallel alpha evaluations")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    try {
        std::vector<accretia::ScenarioConfig> configs;
        if (check_cmd->parsed()) {
            configs = builtin_check_configs();
        } else {
            accretia::ScenarioConfig config = accretia::parse_config(read_file(config_path));
            if (sweep_cmd->parsed()) {
                if (sweep_steps < 1) {
                    throw accretia::ConfigError("sweep-alpha: --steps must be >= 1");
                }
                if (!(sweep_from > 0.0) || !(sweep_to < 1.0) || sweep_from > sweep_to) {
                    throw accretia::ConfigError(
                        "sweep-alpha: need 0 < --from <= --to < 1");
                }
                config.alpha_grid.clear();
                for (int k = 0; k < sweep_steps; ++k) {
                    const double frac =
                        sweep_steps == 1 ? 0.0
                                         : static_cast<double>(k) / (sweep_steps - 1);
                    config.alpha_grid.push_back(sweep_from + frac * (sweep_to - sweep_from));
                }
                if (std::find(config.outputs.begin(), config.outputs.end(),
                              accretia::OutputKind::alpha_sweep_csv) == config.outputs.end()) {
                    config.outputs.push_back(accretia::OutputKind::alpha_sweep_csv);
                }
            }
            configs.push_back(std::move(config));
        }
        for (accretia::ScenarioConfig& config : configs) apply_seed_override(config);
        return run_configs(configs, out_dir, jobs);
    } catch (const accretia::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfigError;
    }
}
