#include "accretia/operator_models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "accretia/linalg.hpp"

namespace accretia {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Shared tail of every constructor: eigensolve, check the spectral inclusion
// sigma(A) in S(omega), fill the structural flags.
SectorialModel finalize(ComplexDenseMatrix matrix, double omega, bool selfadjoint,
                        double angle_tol) {
    if (omega < 0.0 || omega > kHalfPi + angle_tol) {
        throw std::invalid_argument("SectorialModel: omega must lie in [0, pi/2]");
    }
    EigenDecomposition d = eigendecompose(matrix.mat());

    SectorialModel m{std::move(matrix), omega, {}, selfadjoint, false, false};
    m.spectrum.assign(d.values.data(), d.values.data() + d.values.size());
    m.is_diagonalizable = std::isfinite(d.vector_cond) && d.vector_cond <= 1e12;

    double min_abs = std::numeric_limits<double>::infinity();
    for (const Complex& lambda : m.spectrum) {
        min_abs = std::min(min_abs, std::abs(lambda));
        if (std::abs(lambda) > 0.0 && std::abs(std::arg(lambda)) > omega + angle_tol) {
            throw std::invalid_argument("SectorialModel: eigenvalue outside the sector S(omega)");
        }
    }
    m.zero_in_resolvent = min_abs > 0.0;
    if (selfadjoint) {
        for (const Complex& lambda : m.spectrum) {
            if (std::abs(lambda.imag()) > angle_tol || lambda.real() < -angle_tol) {
                throw std::invalid_argument("SectorialModel: self-adjoint flag with non-real-nonnegative spectrum");
            }
        }
    }
    return m;
}

}  // namespace

SectorialModel make_diag_sectorial(const std::vector<double>& moduli,
                                   const std::vector<double>& angles, double omega,
                                   double angle_tol) {
    if (moduli.empty() || moduli.size() != angles.size()) {
        throw std::invalid_argument("make_diag_sectorial: moduli and angles must be non-empty and equal length");
    }
    const int n = static_cast<int>(moduli.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        if (moduli[k] <= 0.0) {
            throw std::invalid_argument("make_diag_sectorial: moduli must be positive");
        }
        if (std::abs(angles[k]) > omega + angle_tol) {
            throw std::invalid_argument("make_diag_sectorial: sector violation, |angle| exceeds omega");
        }
        m(k, k) = std::polar(moduli[k], angles[k]);
    }
    const bool selfadjoint =
        omega == 0.0 && std::all_of(angles.begin(), angles.end(), [](double a) { return a == 0.0; });
    return finalize(ComplexDenseMatrix(std::move(m)), omega, selfadjoint, angle_tol);
}

SectorialModel make_dirichlet_laplacian_1d(int n, double h, double angle_tol) {
    if (n < 1) throw std::invalid_argument("make_dirichlet_laplacian_1d: n must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("make_dirichlet_laplacian_1d: h must be > 0");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const double d = 2.0 / (h * h);
    const double off = -1.0 / (h * h);
    for (int k = 0; k < n; ++k) {
        m(k, k) = d;
        if (k + 1 < n) {
            m(k, k + 1) = off;
            m(k + 1, k) = off;
        }
    }
    return finalize(ComplexDenseMatrix(std::move(m)), 0.0, /*selfadjoint=*/true, angle_tol);
}

SectorialModel make_rotated(const SectorialModel& model, double phi, double angle_tol) {
    const double omega = model.omega + std::abs(phi);
    if (omega > kHalfPi + angle_tol) {
        throw std::invalid_argument("make_rotated: resulting angle exceeds pi/2");
    }
    const Complex rot = std::polar(1.0, phi);
    return finalize(ComplexDenseMatrix(rot * model.matrix.mat()), std::min(omega, kHalfPi),
                    model.is_selfadjoint && phi == 0.0, angle_tol);
}

double certify_omega(const SectorialModel& model, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("certify_omega: sample_count must be >= 1");
    GaussianSampler sampler(seed);
    double worst = 0.0;
    for (int s = 0; s < sample_count; ++s) {
        const Eigen::VectorXcd x = sampler.unit_vector(model.dim());
        const Complex value = x.dot(model.matrix.mat() * x);  // <Ax, x> = x^H (Ax)
        if (value == Complex(0.0, 0.0)) continue;
        worst = std::max(worst, std::abs(std::arg(value)));
    }
    return worst;
}

AccretivityReport check_accretivity(const SectorialModel& model, int sample_count,
                                    std::uint64_t seed) {
    AccretivityReport report;
    GaussianSampler sampler(seed);
    const double scale = spectral_norm(model.matrix.mat());
    const double tol = 1e-10 * std::max(1.0, scale);

    report.sector_inequality_holds = true;
    const bool full_half_plane = model.omega >= kHalfPi - 1e-12;
    const double slope = full_half_plane ? 0.0 : std::tan(model.omega);
    for (int s = 0; s < std::max(1, sample_count); ++s) {
        const Eigen::VectorXcd x = sampler.unit_vector(model.dim());
        const Complex value = x.dot(model.matrix.mat() * x);
        const double excess = full_half_plane
                                  ? -value.real()
                                  : std::abs(value.imag()) - slope * value.real();
        if (excess > report.worst_violation) report.worst_violation = excess;
        if (excess > tol) report.sector_inequality_holds = false;
    }

    const Eigen::MatrixXcd shifted =
        Eigen::MatrixXcd::Identity(model.dim(), model.dim()) + model.matrix.mat();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    const double smin = svd.singularValues().minCoeff();
    report.shifted_condition =
        smin > 0.0 ? svd.singularValues().maxCoeff() / smin : std::numeric_limits<double>::infinity();
    report.shifted_invertible = std::isfinite(report.shifted_condition);
    return report;
}

}  // namespace accretia
