#include "accretia/fractional_core.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "accretia/linalg.hpp"

namespace accretia {

namespace {

constexpr double kOracleMaxCond = 1e6;

// Gauss-Legendre nodes/weights on [0, 1], Newton iteration on P_n.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule compute_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess on [-1, 1]
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = 0.5 * (x + 1.0);
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // already scaled to length 1
    }
    return rule;
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

// One pass of the substituted Balakrishnan integral with n nodes per half.
//
// Head, lambda in [0, s] via lambda = s u^{1/alpha}:
//   int = (s^alpha/alpha) int_0^1 A(s u^{1/alpha} I + A)^{-1} du
// Tail, lambda in [s, inf) via lambda = s y^{-1/(1-alpha)}:
//   int = (s^{alpha-1}/(1-alpha)) int_0^1 A(I + (y^{1/(1-alpha)}/s) A)^{-1} dy
// Both integrands are bounded on [0, 1]; the lambda^{alpha-1} endpoint
// singularity and the 1/lambda tail decay are absorbed by the substitutions.
Eigen::MatrixXcd balakrishnan_pass(const Eigen::MatrixXcd& a, double alpha, double s, int n) {
    const int dim = static_cast<int>(a.rows());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    const GaussRule& rule = gauss_legendre(n);

    Eigen::MatrixXcd head = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd tail = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const double u = rule.nodes[i];
        const double w = rule.weights[i];
        const double lam = s * std::pow(u, 1.0 / alpha);
        head += w * (lam * id + a).partialPivLu().solve(a);
        const double c = std::pow(u, 1.0 / (1.0 - alpha)) / s;
        tail += w * (id + c * a).partialPivLu().solve(a);
    }
    const double front = std::sin(std::numbers::pi * alpha) / std::numbers::pi;
    return front * (std::pow(s, alpha) / alpha * head +
                    std::pow(s, alpha - 1.0) / (1.0 - alpha) * tail);
}

}  // namespace

ComplexDenseMatrix principal_power(const SectorialModel& model, double p) {
    if (!model.is_diagonalizable) {
        throw std::invalid_argument("principal_power: model is not diagonalizable");
    }
    if (p < 0.0 && !model.zero_in_resolvent) {
        throw std::invalid_argument("principal_power: negative exponent requires 0 in the resolvent set");
    }
    return ComplexDenseMatrix(principal_matrix_power(model.matrix.mat(), p, kOracleMaxCond));
}

PowerResult principal_power_oracle(const SectorialModel& model, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::invalid_argument("principal_power_oracle: alpha must lie in (0, 1]");
    }
    return PowerResult{principal_power(model, alpha), alpha, PowerMethod::oracle, std::nullopt};
}

PowerResult balakrishnan_power(const SectorialModel& model, double alpha,
                               const QuadratureSpec& quad) {
    quad.validate();
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("balakrishnan_power: alpha must lie strictly inside (0, 1)");
    }
    if (!model.zero_in_resolvent) {
        throw std::invalid_argument("balakrishnan_power: requires 0 in the resolvent set");
    }
    const Eigen::MatrixXcd& a = model.matrix.mat();
    const double s = quad.split_point.value_or(spectral_norm(a));

    Eigen::MatrixXcd current = balakrishnan_pass(a, alpha, s, 32);
    double achieved = std::numeric_limits<double>::infinity();
    for (int n = 64; n <= quad.node_count; n *= 2) {
        Eigen::MatrixXcd next = balakrishnan_pass(a, alpha, s, n);
        achieved = (next - current).norm() / std::max(next.norm(), 1e-300);
        current = std::move(next);
        if (achieved <= quad.rel_tol) break;
    }
    if (!(achieved <= quad.rel_tol)) {
        throw QuadratureError("balakrishnan_power: node doubling stalled before rel_tol", achieved);
    }

    PowerResult result{ComplexDenseMatrix(current), alpha, PowerMethod::quadrature, std::nullopt};
    if (model.is_diagonalizable) {
        try {
            const Eigen::MatrixXcd oracle = principal_power(model, alpha).mat();
            result.residual_vs_oracle = (current - oracle).norm() / std::max(oracle.norm(), 1e-300);
        } catch (const std::invalid_argument&) {
            // oracle unavailable (ill-conditioned eigenvectors); leave residual absent
        }
    }
    return result;
}

PowerResult cube_root(const SectorialModel& model) {
    return PowerResult{principal_power(model, 1.0 / 3.0), 1.0 / 3.0, PowerMethod::oracle,
                       std::nullopt};
}

double moment_inequality_probe(const SectorialModel& model, double alpha, int trials,
                               std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("moment_inequality_probe: trials must be >= 1");
    const Eigen::MatrixXcd power = principal_power(model, alpha).mat();
    const Eigen::MatrixXcd& a = model.matrix.mat();
    GaussianSampler sampler(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXcd x = sampler.unit_vector(model.dim());
        const double ax = (a * x).norm();
        if (ax == 0.0) continue;
        const double ratio = (power * x).norm() / (std::pow(x.norm(), 1.0 - alpha) * std::pow(ax, alpha));
        worst = std::max(worst, ratio);
    }
    return worst;
}

}  // namespace accretia
