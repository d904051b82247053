#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "accretia/evolution_solver.hpp"
#include "accretia/fractional_block.hpp"
#include "accretia/operator_models.hpp"

namespace accretia {

/// Recursive description of the operator under test.
struct OperatorSpec {
    enum class Kind { diag_sectorial, laplacian_1d, rotated };
    Kind kind = Kind::laplacian_1d;

    // diag_sectorial
    std::vector<double> moduli;
    std::vector<double> angles;
    double omega = 0.0;

    // laplacian_1d
    int n = 0;
    double h = 0.0;

    // rotated
    double phi = 0.0;
    std::shared_ptr<OperatorSpec> inner;
};

struct Tolerances {
    double quad_rel_tol = 1e-6;
    double oracle_rel_tol = 1e-8;
    double ode_rel_tol = 1e-8;
};

enum class OutputKind { spectrum_svg, alpha_sweep_csv, solve_report_json, probe_csv };

/// Declarative description of one experiment.
struct ScenarioConfig {
    std::string name;
    OperatorSpec op;
    std::vector<double> alpha_grid;
    std::vector<double> t_grid;
    Tolerances tolerances;
    std::vector<OutputKind> outputs;
    std::int64_t seed = 42;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Strict TOML parse + validation; defaults applied for absent tolerances and
/// seed. Unknown keys are errors.
ScenarioConfig parse_config(const std::string& text);

/// Inverse of parse_config up to formatting; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

SectorialModel build_operator(const OperatorSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = true;
    double worst_residual = 0.0;
    double tolerance = 0.0;
};

struct AlphaResult {
    double alpha = 0.0;
    double max_abs_arg = 0.0;
    GenerationVerdict verdict = GenerationVerdict::analytic;
    double oracle_residual = 0.0;
    double quad_residual = 0.0;
    double spectral_abscissa = 0.0;
    double spectral_mapping_distance = 0.0;
    std::optional<SolveReport> solve;
};

struct ScenarioResult {
    std::string name;
    std::vector<AlphaResult> per_alpha;
    std::vector<CheckResult> checks;
    bool all_passed = true;
    std::vector<std::string> written_files;
};

/// Executes the full pipeline for one config and writes the requested
/// outputs under out_dir. Throws ConfigError for bad configs and
/// std::runtime_error for I/O failures.
ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir,
                            int jobs = 1);

/// Doubles as "%.16e": 17 significant digits, lowercase e-notation.
std::string format_double(double v);

}  // namespace accretia
