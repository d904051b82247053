#include "accretia/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "accretia/block_linearization.hpp"
#include "accretia/fractional_core.hpp"
#include "accretia/linalg.hpp"
#include "accretia/svg.hpp"
#include "accretia/toml_lite.hpp"

namespace accretia {

namespace {

constexpr double kSpectralMappingTol = 1e-9;

const char* output_kind_name(OutputKind kind) {
    switch (kind) {
        case OutputKind::spectrum_svg: return "spectrum_svg";
        case OutputKind::alpha_sweep_csv: return "alpha_sweep_csv";
        case OutputKind::solve_report_json: return "solve_report_json";
        case OutputKind::probe_csv: return "probe_csv";
    }
    return "unknown";
}

OutputKind output_kind_from(const std::string& name) {
    for (OutputKind kind : {OutputKind::spectrum_svg, OutputKind::alpha_sweep_csv,
                            OutputKind::solve_report_json, OutputKind::probe_csv}) {
        if (name == output_kind_name(kind)) return kind;
    }
    throw ConfigError("outputs: unknown output kind '" + name + "'");
}

void require_keys(const toml::Table& table, const std::set<std::string>& allowed,
                  const std::string& context) {
    for (const auto& [key, value] : table) {
        if (allowed.count(key) == 0) {
            throw ConfigError(context + ": unknown key '" + key + "'");
        }
    }
}

std::vector<double> number_array(const toml::Value& value, const std::string& field) {
    if (!value.is_array()) throw ConfigError(field + ": expected an array of numbers");
    std::vector<double> out;
    for (const toml::Value& item : value.as_array()) {
        if (!item.is_number()) throw ConfigError(field + ": expected an array of numbers");
        out.push_back(item.as_double());
    }
    return out;
}

double number_field(const toml::Table& table, const std::string& key, const std::string& context) {
    auto it = table.find(key);
    if (it == table.end() || !it->second.is_number()) {
        throw ConfigError(context + ": missing numeric key '" + key + "'");
    }
    return it->second.as_double();
}

OperatorSpec parse_operator(const toml::Table& table, const std::string& context) {
    auto kind_it = table.find("kind");
    if (kind_it == table.end() || !kind_it->second.is_string()) {
        throw ConfigError(context + ": missing string key 'kind'");
    }
    const std::string& kind = kind_it->second.as_string();
    OperatorSpec spec;
    if (kind == "diag_sectorial") {
        spec.kind = OperatorSpec::Kind::diag_sectorial;
        require_keys(table, {"kind", "moduli", "angles", "omega"}, context);
        auto moduli_it = table.find("moduli");
        auto angles_it = table.find("angles");
        if (moduli_it == table.end() || angles_it == table.end()) {
            throw ConfigError(context + ": diag_sectorial requires 'moduli' and 'angles'");
        }
        spec.moduli = number_array(moduli_it->second, context + ".moduli");
        spec.angles = number_array(angles_it->second, context + ".angles");
        spec.omega = number_field(table, "omega", context);
    } else if (kind == "laplacian_1d") {
        spec.kind = OperatorSpec::Kind::laplacian_1d;
        require_keys(table, {"kind", "n", "h"}, context);
        spec.n = static_cast<int>(number_field(table, "n", context));
        spec.h = number_field(table, "h", context);
    } else if (kind == "rotated") {
        spec.kind = OperatorSpec::Kind::rotated;
        require_keys(table, {"kind", "phi", "inner"}, context);
        spec.phi = number_field(table, "phi", context);
        auto inner_it = table.find("inner");
        if (inner_it == table.end() || !inner_it->second.is_table()) {
            throw ConfigError(context + ": rotated requires an 'inner' operator table");
        }
        spec.inner = std::make_shared<OperatorSpec>(
            parse_operator(inner_it->second.as_table(), context + ".inner"));
    } else {
        throw ConfigError(context + ": unknown operator kind '" + kind + "'");
    }
    return spec;
}

void serialize_operator(std::ostream& out, const OperatorSpec& spec, const std::string& path) {
    out << "[" << path << "]\n";
    switch (spec.kind) {
        case OperatorSpec::Kind::diag_sectorial: {
            out << "kind = \"diag_sectorial\"\n";
            out << "moduli = [";
            for (std::size_t k = 0; k < spec.moduli.size(); ++k) {
                out << (k ? ", " : "") << format_double(spec.moduli[k]);
            }
            out << "]\nangles = [";
            for (std::size_t k = 0; k < spec.angles.size(); ++k) {
                out << (k ? ", " : "") << format_double(spec.angles[k]);
            }
            out << "]\nomega = " << format_double(spec.omega) << "\n";
            break;
        }
        case OperatorSpec::Kind::laplacian_1d:
            out << "kind = \"laplacian_1d\"\n";
            out << "n = " << spec.n << "\n";
            out << "h = " << format_double(spec.h) << "\n";
            break;
        case OperatorSpec::Kind::rotated:
            out << "kind = \"rotated\"\n";
            out << "phi = " << format_double(spec.phi) << "\n";
            serialize_operator(out, *spec.inner, path + ".inner");
            break;
    }
}

}  // namespace

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.16e", v);
    return buffer;
}

ScenarioConfig parse_config(const std::string& text) {
    toml::Table root;
    try {
        root = toml::parse(text);
    } catch (const toml::ParseError& err) {
        throw ConfigError(std::string("parse error: ") + err.what());
    }
    require_keys(root, {"name", "seed", "alpha_grid", "t_grid", "outputs", "operator", "tolerances"},
                 "config");

    ScenarioConfig config;
    auto name_it = root.find("name");
    if (name_it == root.end() || !name_it->second.is_string()) {
        throw ConfigError("name: missing string key");
    }
    config.name = name_it->second.as_string();
    if (config.name.empty() || config.name.find('/') != std::string::npos ||
        config.name.find('\\') != std::string::npos) {
        throw ConfigError("name: must be a valid filename stem without path separators");
    }

    auto op_it = root.find("operator");
    if (op_it == root.end() || !op_it->second.is_table()) {
        throw ConfigError("operator: missing table");
    }
    config.op = parse_operator(op_it->second.as_table(), "operator");

    auto alpha_it = root.find("alpha_grid");
    if (alpha_it == root.end()) throw ConfigError("alpha_grid: missing");
    config.alpha_grid = number_array(alpha_it->second, "alpha_grid");
    for (double alpha : config.alpha_grid) {
        if (!(alpha > 0.0) || !(alpha < 1.0)) {
            throw ConfigError("alpha_grid: values must lie strictly inside (0, 1)");
        }
    }

    if (auto it = root.find("t_grid"); it != root.end()) {
        config.t_grid = number_array(it->second, "t_grid");
        if (!config.t_grid.empty()) {
            if (config.t_grid.front() != 0.0) throw ConfigError("t_grid: must start at 0");
            for (std::size_t k = 1; k < config.t_grid.size(); ++k) {
                if (config.t_grid[k] <= config.t_grid[k - 1]) {
                    throw ConfigError("t_grid: must be strictly increasing");
                }
            }
        }
    }

    if (auto it = root.find("tolerances"); it != root.end()) {
        if (!it->second.is_table()) throw ConfigError("tolerances: expected a table");
        const toml::Table& tols = it->second.as_table();
        require_keys(tols, {"quad_rel_tol", "oracle_rel_tol", "ode_rel_tol"}, "tolerances");
        if (tols.count("quad_rel_tol"))
            config.tolerances.quad_rel_tol = number_field(tols, "quad_rel_tol", "tolerances");
        if (tols.count("oracle_rel_tol"))
            config.tolerances.oracle_rel_tol = number_field(tols, "oracle_rel_tol", "tolerances");
        if (tols.count("ode_rel_tol"))
            config.tolerances.ode_rel_tol = number_field(tols, "ode_rel_tol", "tolerances");
        for (double tol : {config.tolerances.quad_rel_tol, config.tolerances.oracle_rel_tol,
                           config.tolerances.ode_rel_tol}) {
            if (!(tol > 0.0)) throw ConfigError("tolerances: values must be positive");
        }
    }

    if (auto it = root.find("outputs"); it != root.end()) {
        if (!it->second.is_array()) throw ConfigError("outputs: expected an array of strings");
        for (const toml::Value& item : it->second.as_array()) {
            if (!item.is_string()) throw ConfigError("outputs: expected an array of strings");
            const OutputKind kind = output_kind_from(item.as_string());
            if (std::find(config.outputs.begin(), config.outputs.end(), kind) !=
                config.outputs.end()) {
                throw ConfigError("outputs: duplicate entry '" + item.as_string() + "'");
            }
            config.outputs.push_back(kind);
        }
    }

    if (auto it = root.find("seed"); it != root.end()) {
        if (!it->second.is_integer()) throw ConfigError("seed: expected an integer");
        config.seed = it->second.as_integer();
    }
    return config;
}

std::string serialize_config(const ScenarioConfig& config) {
    std::ostringstream out;
    out << "name = \"" << config.name << "\"\n";
    out << "seed = " << config.seed << "\n";
    out << "alpha_grid = [";
    for (std::size_t k = 0; k < config.alpha_grid.size(); ++k) {
        out << (k ? ", " : "") << format_double(config.alpha_grid[k]);
    }
    out << "]\nt_grid = [";
    for (std::size_t k = 0; k < config.t_grid.size(); ++k) {
        out << (k ? ", " : "") << format_double(config.t_grid[k]);
    }
    out << "]\noutputs = [";
    for (std::size_t k = 0; k < config.outputs.size(); ++k) {
        out << (k ? ", " : "") << "\"" << output_kind_name(config.outputs[k]) << "\"";
    }
    out << "]\n";
    out << "[tolerances]\n";
    out << "quad_rel_tol = " << format_double(config.tolerances.quad_rel_tol) << "\n";
    out << "oracle_rel_tol = " << format_double(config.tolerances.oracle_rel_tol) << "\n";
    out << "ode_rel_tol = " << format_double(config.tolerances.ode_rel_tol) << "\n";
    serialize_operator(out, config.op, "operator");
    return out.str();
}

SectorialModel build_operator(const OperatorSpec& spec) {
    switch (spec.kind) {
        case OperatorSpec::Kind::diag_sectorial:
            return make_diag_sectorial(spec.moduli, spec.angles, spec.omega);
        case OperatorSpec::Kind::laplacian_1d:
            return make_dirichlet_laplacian_1d(spec.n, spec.h);
        case OperatorSpec::Kind::rotated:
            if (!spec.inner) throw ConfigError("rotated operator without inner spec");
            return make_rotated(build_operator(*spec.inner), spec.phi);
    }
    throw ConfigError("unreachable operator kind");
}

namespace {

struct AlphaOutcome {
    AlphaResult result;
    bool oracle_ok = true;
    bool quad_ok = true;
    std::optional<SectorClassification> classification;
};

AlphaOutcome evaluate_alpha(const SectorialModel& model, double alpha,
                            const ScenarioConfig& config) {
    AlphaOutcome outcome;
    AlphaResult& r = outcome.result;
    r.alpha = alpha;
    r.spectral_abscissa = nongeneration_evidence(model);

    const Eigen::MatrixXcd closed = closed_form_fractional_block(model, alpha).flatten();
    try {
        const Eigen::MatrixXcd oracle =
            principal_matrix_power(assemble_block(model).flatten(), alpha, 1e6);
        r.oracle_residual = (closed - oracle).norm() / std::max(oracle.norm(), 1e-300);
    } catch (const std::exception&) {
        r.oracle_residual = std::numeric_limits<double>::infinity();
        outcome.oracle_ok = false;
    }

    try {
        QuadratureSpec quad;
        quad.rel_tol = std::max(config.tolerances.quad_rel_tol / 10.0, 1e-12);
        const PowerResult power = balakrishnan_power(model, alpha, quad);
        r.quad_residual = power.residual_vs_oracle.value_or(std::numeric_limits<double>::infinity());
    } catch (const QuadratureError& err) {
        r.quad_residual = err.achieved_residual;
        outcome.quad_ok = false;
    } catch (const std::exception&) {
        r.quad_residual = std::numeric_limits<double>::infinity();
        outcome.quad_ok = false;
    }

    std::vector<Complex> predicted;
    for (const Complex& lambda : spectrum_block(model)) predicted.push_back(std::pow(lambda, alpha));
    EigenDecomposition d = eigendecompose(closed);
    std::vector<Complex> solved(d.values.data(), d.values.data() + d.values.size());
    r.spectral_mapping_distance = hausdorff_distance(predicted, solved);

    outcome.classification = classify_spectrum_sectors(model, alpha);
    r.max_abs_arg = outcome.classification->max_abs_arg;
    r.verdict = generation_verdict(model, alpha);

    const double alpha_limit = alpha_star(model.omega) - 0.01;
    if (!config.t_grid.empty() && alpha >= 0.05 && alpha <= alpha_limit) {
        GaussianSampler sampler(static_cast<std::uint64_t>(config.seed));
        const int n = model.dim();
        Eigen::VectorXcd phi(n), psi(n), xi(n);
        for (int k = 0; k < n; ++k) phi[k] = sampler.complex_normal();
        for (int k = 0; k < n; ++k) psi[k] = sampler.complex_normal();
        for (int k = 0; k < n; ++k) xi[k] = sampler.complex_normal();
        r.solve = run_solve_report(model, alpha, phi, psi, xi, config.t_grid,
                                   config.tolerances.ode_rel_tol);
    }
    return outcome;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

void write_file(const std::string& path, const std::string& body,
                std::vector<std::string>& written) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << body;
    if (!out) throw std::runtime_error("write failed for " + path);
    written.push_back(path);
}

std::vector<SectorWedge> lambda_wedges(double omega) {
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    return {{0.0, omega / 3.0}, {third, omega / 3.0}, {-third, omega / 3.0}};
}

std::vector<SectorWedge> gamma_wedges(double omega, double alpha) {
    const double center = 2.0 * std::numbers::pi * alpha / 3.0;
    return {{0.0, alpha * omega / 3.0},
            {center, alpha * omega / 3.0},
            {-center, alpha * omega / 3.0}};
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir, int jobs) {
    const SectorialModel model = build_operator(config.op);
    std::filesystem::create_directories(out_dir);

    ScenarioResult result;
    result.name = config.name;

    std::vector<AlphaOutcome> outcomes(config.alpha_grid.size());
    if (jobs > 1 && config.alpha_grid.size() > 1) {
        std::vector<std::future<AlphaOutcome>> futures;
        futures.reserve(config.alpha_grid.size());
        for (double alpha : config.alpha_grid) {
            futures.push_back(std::async(std::launch::async,
                                         [&, alpha] { return evaluate_alpha(model, alpha, config); }));
        }
        for (std::size_t k = 0; k < futures.size(); ++k) outcomes[k] = futures[k].get();
    } else {
        for (std::size_t k = 0; k < config.alpha_grid.size(); ++k) {
            outcomes[k] = evaluate_alpha(model, config.alpha_grid[k], config);
        }
    }

    CheckResult oracle_check{"fractional_block_oracle", true, 0.0, config.tolerances.oracle_rel_tol};
    CheckResult quad_check{"balakrishnan_quadrature", true, 0.0, config.tolerances.quad_rel_tol};
    CheckResult mapping_check{"spectral_mapping", true, 0.0, kSpectralMappingTol};
    const double solve_tol = std::max(1e-6, 10.0 * config.tolerances.ode_rel_tol);
    CheckResult solve_check{"solve_agreement", true, 0.0, solve_tol};
    bool any_solve = false;

    for (const AlphaOutcome& outcome : outcomes) {
        const AlphaResult& r = outcome.result;
        result.per_alpha.push_back(r);
        oracle_check.worst_residual = std::max(oracle_check.worst_residual, r.oracle_residual);
        if (!outcome.oracle_ok || r.oracle_residual > oracle_check.tolerance) {
            oracle_check.passed = false;
        }
        quad_check.worst_residual = std::max(quad_check.worst_residual, r.quad_residual);
        if (!outcome.quad_ok || r.quad_residual > quad_check.tolerance) quad_check.passed = false;
        mapping_check.worst_residual =
            std::max(mapping_check.worst_residual, r.spectral_mapping_distance);
        if (r.spectral_mapping_distance > mapping_check.tolerance) mapping_check.passed = false;
        if (r.solve) {
            any_solve = true;
            const double worst = std::max(r.solve->max_rel_err_closed_vs_semigroup,
                                          r.solve->max_rel_err_semigroup_vs_reference);
            solve_check.worst_residual = std::max(solve_check.worst_residual, worst);
            if (worst > solve_check.tolerance) solve_check.passed = false;
        }
    }

    result.checks = {oracle_check, quad_check, mapping_check};
    if (any_solve) result.checks.push_back(solve_check);
    result.all_passed = std::all_of(result.checks.begin(), result.checks.end(),
                                    [](const CheckResult& c) { return c.passed; });

    const std::filesystem::path base = std::filesystem::path(out_dir) / config.name;
    auto enabled = [&](OutputKind kind) {
        return std::find(config.outputs.begin(), config.outputs.end(), kind) !=
               config.outputs.end();
    };

    if (enabled(OutputKind::spectrum_svg)) {
        std::vector<LabeledPoints> groups(3);
        constexpr double third = 2.0 * std::numbers::pi / 3.0;
        groups[0].label = "Λ1";
        groups[1].label = "Λ2";
        groups[2].label = "Λ3";
        for (const Complex& p : spectrum_block(model)) {
            const double arg = std::arg(p);
            const double d1 = std::abs(arg);
            const double d2 = std::abs(arg - third);
            const double d3 = std::abs(arg + third);
            if (d1 <= d2 && d1 <= d3) {
                groups[0].points.push_back(p);
            } else if (d2 <= d3) {
                groups[1].points.push_back(p);
            } else {
                groups[2].points.push_back(p);
            }
        }
        const std::string path = base.string() + "_spectrum.svg";
        write_file(path, render_spectrum_svg(groups, lambda_wedges(model.omega)),
                   result.written_files);
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
            const SectorClassification& cls = *outcomes[k].classification;
            std::vector<LabeledPoints> gamma{{"Γ1", cls.gamma1},
                                             {"Γ2", cls.gamma2},
                                             {"Γ3", cls.gamma3}};
            write_file(base.string() + "_spectrum_alpha" + std::to_string(k) + ".svg",
                       render_spectrum_svg(gamma, gamma_wedges(model.omega, cls.alpha)),
                       result.written_files);
        }
    }

    if (enabled(OutputKind::alpha_sweep_csv)) {
        std::ostringstream csv;
        csv << "alpha,max_abs_arg,verdict,oracle_residual,quad_residual,spectral_abscissa\n";
        for (const AlphaResult& r : result.per_alpha) {
            csv << format_double(r.alpha) << "," << format_double(r.max_abs_arg) << ","
                << to_string(r.verdict) << "," << format_double(r.oracle_residual) << ","
                << format_double(r.quad_residual) << "," << format_double(r.spectral_abscissa)
                << "\n";
        }
        write_file(base.string() + "_alpha_sweep.csv", csv.str(), result.written_files);
    }

    if (enabled(OutputKind::probe_csv)) {
        const ProbeNorm kind = model.is_diagonalizable ? ProbeNorm::weighted : ProbeNorm::flat;
        const ResolventProbeReport probe =
            resolvent_bound_probe(model, default_lambda_grid(), kind);
        std::ostringstream csv;
        csv << "lambda,resolvent_norm,lambda_times_norm\n";
        for (std::size_t k = 0; k < probe.lambda_grid.size(); ++k) {
            csv << format_double(probe.lambda_grid[k]) << "," << format_double(probe.norms[k])
                << "," << format_double(probe.lambda_grid[k] * probe.norms[k]) << "\n";
        }
        write_file(base.string() + "_probe.csv", csv.str(), result.written_files);
    }

    if (enabled(OutputKind::solve_report_json)) {
        std::ostringstream js;
        js << "{\n  \"name\": \"" << json_escape(config.name) << "\",\n  \"solves\": [";
        bool first = true;
        for (const AlphaResult& r : result.per_alpha) {
            if (!r.solve) continue;
            if (!first) js << ",";
            first = false;
            js << "\n    {\"alpha\": " << format_double(r.alpha)
               << ", \"max_rel_err_closed_vs_semigroup\": "
               << format_double(r.solve->max_rel_err_closed_vs_semigroup)
               << ", \"max_rel_err_semigroup_vs_reference\": "
               << format_double(r.solve->max_rel_err_semigroup_vs_reference)
               << ",\n     \"t_grid\": [";
            for (std::size_t k = 0; k < r.solve->t_grid.size(); ++k) {
                js << (k ? ", " : "") << format_double(r.solve->t_grid[k]);
            }
            js << "],\n     \"fractional_norms\": [";
            for (std::size_t k = 0; k < r.solve->fractional_norms.size(); ++k) {
                const auto& fn = r.solve->fractional_norms[k];
                js << (k ? ", " : "") << "[" << format_double(fn[0]) << ", " << format_double(fn[1])
                   << ", " << format_double(fn[2]) << ", " << format_double(fn[3]) << "]";
            }
            js << "]}";
        }
        js << "\n  ]\n}\n";
        write_file(base.string() + "_solve_report.json", js.str(), result.written_files);
    }

    // summary report is always written
    {
        std::ostringstream js;
        js << "{\n  \"name\": \"" << json_escape(config.name) << "\",\n";
        js << "  \"seed\": " << config.seed << ",\n";
        js << "  \"all_passed\": " << (result.all_passed ? "true" : "false") << ",\n";
        js << "  \"checks\": [";
        for (std::size_t k = 0; k < result.checks.size(); ++k) {
            const CheckResult& c = result.checks[k];
            js << (k ? "," : "") << "\n    {\"name\": \"" << json_escape(c.name)
               << "\", \"passed\": " << (c.passed ? "true" : "false")
               << ", \"worst_residual\": " << format_double(c.worst_residual)
               << ", \"tolerance\": " << format_double(c.tolerance) << "}";
        }
        js << "\n  ],\n  \"per_alpha\": [";
        for (std::size_t k = 0; k < result.per_alpha.size(); ++k) {
            const AlphaResult& r = result.per_alpha[k];
            js << (k ? "," : "") << "\n    {\"alpha\": " << format_double(r.alpha)
               << ", \"max_abs_arg\": " << format_double(r.max_abs_arg) << ", \"verdict\": \""
               << to_string(r.verdict) << "\", \"oracle_residual\": "
               << format_double(r.oracle_residual)
               << ", \"quad_residual\": " << format_double(r.quad_residual)
               << ", \"spectral_abscissa\": " << format_double(r.spectral_abscissa)
               << ", \"spectral_mapping_distance\": "
               << format_double(r.spectral_mapping_distance) << "}";
        }
        js << "\n  ]\n}\n";
        write_file(base.string() + "_summary.json", js.str(), result.written_files);
    }

    return result;
}

}  // namespace accretia
