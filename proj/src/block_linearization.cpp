#include "accretia/block_linearization.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "accretia/fractional_core.hpp"
#include "accretia/linalg.hpp"

namespace accretia {

Eigen::MatrixXcd BlockOperator::flatten() const {
    const int n = block_dim;
    Eigen::MatrixXcd flat(3 * n, 3 * n);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            flat.block(n * i, n * j, n, n) = block(i, j).mat();
        }
    }
    return flat;
}

BlockOperator assemble_block(const SectorialModel& model) {
    const int n = model.dim();
    const ComplexDenseMatrix zero = ComplexDenseMatrix::zero(n);
    const ComplexDenseMatrix neg_id(-Eigen::MatrixXcd::Identity(n, n));
    return BlockOperator{n,
                         {zero, neg_id, zero,
                          zero, zero, neg_id,
                          model.matrix, zero, zero},
                         BlockLabel::A_block};
}

BlockOperator resolvent_closed_form(const SectorialModel& model, Complex lambda) {
    const Complex mu = lambda * lambda * lambda;
    for (const Complex& ev : model.spectrum) {
        if (std::abs(mu - ev) <= 1e-12) {
            throw std::invalid_argument("resolvent_closed_form: lambda^3 collides with sigma(A)");
        }
    }
    const int n = model.dim();
    const Eigen::MatrixXcd& a = model.matrix.mat();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    // R = (lambda^3 I - A)^{-1}, shared by all nine blocks
    const Eigen::MatrixXcd r = (mu * id - a).partialPivLu().solve(id);
    const Eigen::MatrixXcd ar = a * r;
    auto cdm = [](Eigen::MatrixXcd m) { return ComplexDenseMatrix(std::move(m)); };
    return BlockOperator{n,
                         {cdm(lambda * lambda * r), cdm(-lambda * r), cdm(r),
                          cdm(-ar), cdm(lambda * lambda * r), cdm(-lambda * r),
                          cdm(lambda * ar), cdm(-ar), cdm(lambda * lambda * r)},
                         BlockLabel::resolvent_block};
}

std::vector<Complex> spectrum_block(const SectorialModel& model) {
    std::vector<Complex> result;
    result.reserve(3 * model.spectrum.size());
    constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
    for (const Complex& ev : model.spectrum) {
        const double r = std::cbrt(std::abs(ev));
        const double theta = std::arg(ev) / 3.0;
        result.push_back(std::polar(r, theta));
        result.push_back(std::polar(r, theta + third_turn));
        result.push_back(std::polar(r, theta - third_turn));
    }
    return result;
}

std::vector<double> default_lambda_grid(int points) {
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k) {
        const double t = points == 1 ? 0.0 : static_cast<double>(k) / (points - 1);
        grid[k] = std::pow(10.0, -3.0 + 9.0 * t);
    }
    return grid;
}

ResolventProbeReport resolvent_bound_probe(const SectorialModel& model,
                                           const std::vector<double>& lambda_grid,
                                           ProbeNorm norm_kind) {
    if (lambda_grid.empty()) {
        throw std::invalid_argument("resolvent_bound_probe: empty lambda grid");
    }
    for (double lam : lambda_grid) {
        if (!(lam > 0.0)) throw std::invalid_argument("resolvent_bound_probe: grid values must be > 0");
    }
    const int n = model.dim();
    const Eigen::MatrixXcd flat = assemble_block(model).flatten();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3 * n, 3 * n);

    // X-norm weight diag(A^{2/3}, A^{1/3}, I) and its inverse
    Eigen::MatrixXcd weight, weight_inv;
    if (norm_kind == ProbeNorm::weighted) {
        weight = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
        weight.block(0, 0, n, n) = principal_power(model, 2.0 / 3.0).mat();
        weight.block(n, n, n, n) = principal_power(model, 1.0 / 3.0).mat();
        weight.block(2 * n, 2 * n, n, n) = Eigen::MatrixXcd::Identity(n, n);
        weight_inv = weight.partialPivLu().solve(id);
    }

    ResolventProbeReport report;
    report.lambda_grid = lambda_grid;
    report.norm_kind = norm_kind;
    for (double lam : lambda_grid) {
        Eigen::MatrixXcd resolvent = (lam * id + flat).partialPivLu().solve(id);
        if (!resolvent.allFinite()) {
            throw std::runtime_error("resolvent_bound_probe: singular lambda I + block operator");
        }
        if (norm_kind == ProbeNorm::weighted) resolvent = weight * resolvent * weight_inv;
        const double nrm = spectral_norm(resolvent);
        report.norms.push_back(nrm);
        report.fitted_M = std::max(report.fitted_M, lam * nrm);
        report.fitted_K = std::max(report.fitted_K, (lam + 1.0) * nrm);
    }
    return report;
}

double nongeneration_evidence(const SectorialModel& model) {
    double abscissa = -std::numeric_limits<double>::infinity();
    for (const Complex& ev : spectrum_block(model)) {
        abscissa = std::max(abscissa, -ev.real());
    }
    return abscissa;
}

}  // namespace accretia
