#include "accretia/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace accretia {

EigenDecomposition eigendecompose(const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: eigensolver failed to converge");
    }
    EigenDecomposition d;
    d.vectors = solver.eigenvectors();
    d.values = solver.eigenvalues();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d.vectors);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    d.vector_cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    return d;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().maxCoeff();
}

Eigen::MatrixXcd principal_matrix_power(const Eigen::MatrixXcd& m, double p,
                                        double max_vector_cond) {
    if (p == 0.0) return Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    if (p == 1.0) return m;
    EigenDecomposition d = eigendecompose(m);
    if (!(d.vector_cond <= max_vector_cond)) {
        throw std::invalid_argument("principal_matrix_power: eigenvector matrix too ill-conditioned");
    }
    const bool integer_power = p == std::floor(p);
    Eigen::VectorXcd powered(d.values.size());
    for (Eigen::Index k = 0; k < d.values.size(); ++k) {
        const Complex lambda = d.values[k];
        if (lambda == Complex(0.0, 0.0)) {
            if (p < 0.0) throw std::invalid_argument("principal_matrix_power: zero eigenvalue with negative exponent");
            powered[k] = Complex(0.0, 0.0);
            continue;
        }
        if (!integer_power && lambda.imag() == 0.0 && lambda.real() < 0.0) {
            throw std::invalid_argument("principal_matrix_power: eigenvalue on the branch cut");
        }
        powered[k] = std::pow(lambda, p);
    }
    return d.vectors * powered.asDiagonal() * d.vectors.partialPivLu().solve(
               Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
}

Eigen::MatrixXcd expm_eig(const Eigen::MatrixXcd& m) {
    EigenDecomposition d = eigendecompose(m);
    Eigen::VectorXcd e(d.values.size());
    for (Eigen::Index k = 0; k < d.values.size(); ++k) e[k] = std::exp(d.values[k]);
    return d.vectors * e.asDiagonal() * d.vectors.partialPivLu().solve(
               Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("hausdorff_distance: empty point set");
    }
    auto one_sided = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (const Complex& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Complex& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

// xoshiro256++, seeded through splitmix64. Self-contained so that sampled
// certificates are bit-reproducible independent of the standard library.
namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
}  // namespace

GaussianSampler::GaussianSampler(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

double GaussianSampler::next_uniform() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    // 53-bit mantissa, shifted away from 0 so log() below is safe
    return (static_cast<double>(result >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianSampler::real_normal() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex GaussianSampler::complex_normal() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-std::log(u1));
    return Complex(r * std::cos(2.0 * std::numbers::pi * u2),
                   r * std::sin(2.0 * std::numbers::pi * u2));
}

Eigen::VectorXcd GaussianSampler::unit_vector(int dim) {
    Eigen::VectorXcd x(dim);
    do {
        for (int k = 0; k < dim; ++k) x[k] = complex_normal();
    } while (x.norm() == 0.0);
    return x / x.norm();
}

}  // namespace accretia
