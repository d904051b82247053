#include "accretia/evolution_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "accretia/fractional_core.hpp"
#include "accretia/linalg.hpp"

namespace accretia {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kConfluentTol = 1e-8;
constexpr double kDenominatorTol = 1e-8;
}  // namespace

Eigen::VectorXcd StateTriple::stacked() const {
    Eigen::VectorXcd y(3 * dim());
    y << u, v, w;
    return y;
}

StateTriple StateTriple::from_stacked(const Eigen::VectorXcd& y) {
    const int n = static_cast<int>(y.size()) / 3;
    return StateTriple{y.segment(0, n), y.segment(n, n), y.segment(2 * n, n)};
}

StateTriple StateTriple::zero(int dim) {
    return StateTriple{Eigen::VectorXcd::Zero(dim), Eigen::VectorXcd::Zero(dim),
                       Eigen::VectorXcd::Zero(dim)};
}

FactorizationCoefficients ab_coefficients(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("ab_coefficients: alpha must lie in (0, 1)");
    }
    const Complex a = -std::polar(1.0, -2.0 * kPi * alpha / 3.0);
    const Complex b = -std::polar(1.0, 2.0 * kPi * alpha / 3.0);
    // (x - a)(x - b)(x + 1) must expand to x^3 + U0 x^2 + U0 x + 1
    const double u0 = upsilon(alpha, 0);
    const Complex c2 = Complex(1.0, 0.0) - a - b;
    const Complex c1 = a * b - a - b;
    const Complex c0 = a * b;
    if (std::abs(c2 - u0) > 1e-13 || std::abs(c1 - u0) > 1e-13 ||
        std::abs(c0 - Complex(1.0, 0.0)) > 1e-13) {
        throw std::logic_error("ab_coefficients: factorization invariant violated");
    }
    return FactorizationCoefficients{alpha, a, b, Complex(-1.0, 0.0)};
}

std::array<double, 3> third_order_coefficients(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("third_order_coefficients: alpha must lie in (0, 1)");
    }
    const double u0 = upsilon(alpha, 0);
    return {u0, u0, 1.0};
}

StateTriple initial_data_transform(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                   const Eigen::VectorXcd& xi, double alpha,
                                   const SectorialModel& model) {
    const int n = model.dim();
    if (phi.size() != n || psi.size() != n || xi.size() != n) {
        throw std::invalid_argument("initial_data_transform: data dimension mismatch");
    }
    if (!model.zero_in_resolvent) {
        throw std::invalid_argument("initial_data_transform: requires 0 in the resolvent set");
    }
    const double d1 = std::pow(upsilon(alpha, 1), 3) - std::pow(upsilon(alpha, 0), 3);
    const double d2 = std::pow(upsilon(alpha, 2), 3) - std::pow(upsilon(alpha, 1), 3);
    if (std::abs(d1) < kDenominatorTol || std::abs(d2) < kDenominatorTol) {
        throw std::invalid_argument("initial_data_transform: degenerate Upsilon denominator at alpha=" +
                                    std::to_string(alpha));
    }

    // With G = flatten(𝔸^alpha) and u' = -(G11 u + G12 v + G13 w), matching
    // u'(0) = psi and u''(0) = xi is a linear system in (v(0), w(0)):
    //   G12 v + G13 w                       = -psi - G11 phi
    //   (G12 G22 + G13 G32) v + (G12 G23 + G13 G33) w
    //                                       = xi + G11 psi - (G12 G21 + G13 G31) phi
    const BlockOperator power = closed_form_fractional_block(model, alpha);
    auto g = [&](int i, int j) { return power.block(i, j).mat(); };

    Eigen::MatrixXcd lhs(2 * n, 2 * n);
    lhs.block(0, 0, n, n) = g(0, 1);
    lhs.block(0, n, n, n) = g(0, 2);
    lhs.block(n, 0, n, n) = g(0, 1) * g(1, 1) + g(0, 2) * g(2, 1);
    lhs.block(n, n, n, n) = g(0, 1) * g(1, 2) + g(0, 2) * g(2, 2);

    Eigen::VectorXcd rhs(2 * n);
    rhs.segment(0, n) = -psi - g(0, 0) * phi;
    rhs.segment(n, n) = xi + g(0, 0) * psi - (g(0, 1) * g(1, 0) + g(0, 2) * g(2, 0)) * phi;

    const Eigen::VectorXcd vw = lhs.partialPivLu().solve(rhs);
    StateTriple state{phi, vw.segment(0, n), vw.segment(n, n)};

    // round-trip guard: the state must reproduce psi and xi through the system
    const Eigen::VectorXcd psi_back = -(g(0, 0) * state.u + g(0, 1) * state.v + g(0, 2) * state.w);
    const Eigen::VectorXcd vp = -(g(1, 0) * state.u + g(1, 1) * state.v + g(1, 2) * state.w);
    const Eigen::VectorXcd wp = -(g(2, 0) * state.u + g(2, 1) * state.v + g(2, 2) * state.w);
    const Eigen::VectorXcd xi_back = -(g(0, 0) * psi_back + g(0, 1) * vp + g(0, 2) * wp);
    const double scale = std::max({phi.norm(), psi.norm(), xi.norm(), 1.0});
    if ((psi_back - psi).norm() > 1e-8 * scale || (xi_back - xi).norm() > 1e-8 * scale) {
        throw std::runtime_error("initial_data_transform: round-trip validation failed");
    }
    return state;
}

StateTriple propagate_semigroup(const SectorialModel& model, double alpha,
                                const StateTriple& state0, double t) {
    if (t < 0.0) throw std::invalid_argument("propagate_semigroup: t must be nonnegative");
    if (!(alpha > 0.0) || alpha > alpha_star(model.omega)) {
        throw std::invalid_argument("propagate_semigroup: alpha beyond the generation threshold alpha*");
    }
    if (t == 0.0) return state0;
    const Eigen::MatrixXcd flat = closed_form_fractional_block(model, alpha).flatten();
    return StateTriple::from_stacked(expm_eig(-t * flat) * state0.stacked());
}

Eigen::VectorXcd closed_form_solution(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                      const Eigen::VectorXcd& xi, double alpha,
                                      const SectorialModel& model, double t) {
    const int n = model.dim();
    if (phi.size() != n || psi.size() != n || xi.size() != n) {
        throw std::invalid_argument("closed_form_solution: data dimension mismatch");
    }
    if (t < 0.0) throw std::invalid_argument("closed_form_solution: t must be nonnegative");
    if (!(alpha > 0.0) || alpha > alpha_star(model.omega)) {
        throw std::invalid_argument("closed_form_solution: alpha beyond the generation threshold alpha*");
    }
    if (!model.zero_in_resolvent || !model.is_diagonalizable) {
        throw std::invalid_argument("closed_form_solution: requires invertible diagonalizable model");
    }
    const FactorizationCoefficients fc = ab_coefficients(alpha);
    const Complex a = fc.a, b = fc.b;
    if (std::abs(b - a) < kConfluentTol) {
        throw std::invalid_argument("closed_form_solution: confluent roots, alpha too close to 0");
    }

    // Everything is a function of B = A^{alpha/3}; work in the eigenbasis of A.
    EigenDecomposition d = eigendecompose(model.matrix.mat());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd vinv = d.vectors.partialPivLu().solve(id);
    const Eigen::VectorXcd phi_h = vinv * phi;
    const Eigen::VectorXcd psi_h = vinv * psi;
    const Eigen::VectorXcd xi_h = vinv * xi;

    Eigen::VectorXcd u_h(n);
    for (int k = 0; k < n; ++k) {
        const Complex beta = std::pow(d.values[k], alpha / 3.0);  // eigenvalue of B
        const Complex ea = std::exp(t * a * beta);
        const Complex eb = std::exp(t * b * beta);
        const Complex em = std::exp(-t * beta);
        const Complex f0 = psi_h[k] - a * beta * phi_h[k];
        const Complex g0 = xi_h[k] - (a + b) * beta * psi_h[k] + a * b * beta * beta * phi_h[k];
        const Complex bracket =
            eb / (b - a) - (1.0 + b) * ea / ((1.0 + a) * (b - a)) + em / (1.0 + a);
        u_h[k] = ea * phi_h[k] + (eb - ea) / ((b - a) * beta) * f0 +
                 bracket / ((1.0 + b) * beta * beta) * g0;
    }
    return d.vectors * u_h;
}

std::vector<StateTriple> reference_integrate(const SectorialModel& model, double alpha,
                                             const StateTriple& state0,
                                             const std::vector<double>& t_grid, double rel_tol) {
    if (t_grid.empty() || t_grid.front() != 0.0) {
        throw std::invalid_argument("reference_integrate: t_grid must start at 0");
    }
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (t_grid[k] <= t_grid[k - 1]) {
            throw std::invalid_argument("reference_integrate: t_grid must be strictly increasing");
        }
    }
    if (!(rel_tol >= 1e-12) || !(rel_tol <= 1e-4)) {
        throw std::invalid_argument("reference_integrate: rel_tol must lie in [1e-12, 1e-4]");
    }
    const Eigen::MatrixXcd gen = -closed_form_fractional_block(model, alpha).flatten();
    auto rhs = [&](const Eigen::VectorXcd& y) { return (gen * y).eval(); };

    // Dormand-Prince 5(4); the system is autonomous so the c-nodes drop out
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double b4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const double t_end = t_grid.back();
    std::vector<StateTriple> out;
    out.push_back(state0);
    if (t_grid.size() == 1) return out;

    Eigen::VectorXcd y = state0.stacked();
    double t = 0.0;
    double h = t_end / 100.0;
    const double h_min = 1e-12;
    const double h_max = t_end / 4.0;
    std::size_t next = 1;

    while (next < t_grid.size()) {
        bool clipped = false;
        double step = h;
        if (t + step >= t_grid[next]) {
            step = t_grid[next] - t;
            clipped = true;
        }
        Eigen::VectorXcd k_[7];
        for (int i = 0; i < 7; ++i) {
            Eigen::VectorXcd yi = y;
            for (int j = 0; j < i; ++j) yi += step * A[i][j] * k_[j];
            k_[i] = rhs(yi);
        }
        Eigen::VectorXcd y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            y5 += step * b5[i] * k_[i];
            y4 += step * b4[i] * k_[i];
        }
        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc = rel_tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
            err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
        }
        if (err <= 1.0) {
            t += step;
            y = y5;
            while (next < t_grid.size() && t >= t_grid[next] - 1e-14 * std::max(1.0, t_end)) {
                out.push_back(StateTriple::from_stacked(y));
                ++next;
            }
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        const double h_new = std::clamp((clipped && err <= 1.0 ? h : step) *
                                            std::clamp(factor, 0.2, 5.0),
                                        h_min, h_max);
        if (err > 1.0 && step <= h_min * (1.0 + 1e-12)) {
            throw std::runtime_error("reference_integrate: step underflow at t=" + std::to_string(t));
        }
        h = h_new;
    }
    return out;
}

double fractional_norm(const Eigen::VectorXcd& x, double theta, const SectorialModel& model) {
    if (theta < 0.0 || theta > 1.0) {
        throw std::invalid_argument("fractional_norm: theta must lie in [0, 1]");
    }
    if (theta == 0.0) return x.norm();
    return (principal_power(model, theta).mat() * x).norm();
}

double third_order_residual(const SectorialModel& model, double alpha,
                            const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                            const Eigen::VectorXcd& xi, const std::vector<double>& t_samples,
                            double h, CoefficientSet coefficients) {
    if (!(h >= 1e-4) || !(h <= 1e-2)) {
        throw std::invalid_argument("third_order_residual: h must lie in [1e-4, 1e-2]");
    }
    const Eigen::MatrixXcd b1 = principal_power(model, alpha / 3.0).mat();
    const Eigen::MatrixXcd b2 = principal_power(model, 2.0 * alpha / 3.0).mat();
    const Eigen::MatrixXcd b3 = principal_power(model, alpha).mat();
    const double u0 = upsilon(alpha, 0);

    double worst = 0.0;
    for (double t : t_samples) {
        if (t - 2.0 * h < 0.0) {
            throw std::invalid_argument("third_order_residual: sample too close to t=0 for the stencil");
        }
        Eigen::VectorXcd u[5];  // u(t + k h), k = -2..2
        for (int k = -2; k <= 2; ++k) {
            u[k + 2] = closed_form_solution(phi, psi, xi, alpha, model, t + k * h);
        }
        const Eigen::VectorXcd du = (-u[4] + 8.0 * u[3] - 8.0 * u[1] + u[0]) / (12.0 * h);
        const Eigen::VectorXcd d2u =
            (-u[4] + 16.0 * u[3] - 30.0 * u[2] + 16.0 * u[1] - u[0]) / (12.0 * h * h);
        const Eigen::VectorXcd d3u = (u[4] - 2.0 * u[3] + 2.0 * u[1] - u[0]) / (2.0 * h * h * h);

        Eigen::VectorXcd residual;
        if (coefficients == CoefficientSet::derived) {
            residual = d3u + u0 * (b1 * d2u) + u0 * (b2 * du) + b3 * u[2];
        } else {
            // rival coefficient set: factor 3 and a duplicated u'' term
            residual = d3u + 3.0 * u0 * (b1 * d2u) + 3.0 * u0 * (b2 * d2u) + b3 * u[2];
        }
        worst = std::max(worst, residual.norm());
    }
    return worst;
}

namespace {
double pairwise_rel_err(const std::vector<Eigen::VectorXcd>& a,
                        const std::vector<Eigen::VectorXcd>& b) {
    double scale = 0.0;
    for (const auto& x : a) scale = std::max(scale, x.norm());
    double diff = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, (a[k] - b[k]).norm());
    return diff / std::max(scale, 1e-300);
}
}  // namespace

SolveReport run_solve_report(const SectorialModel& model, double alpha,
                             const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                             const Eigen::VectorXcd& xi, const std::vector<double>& t_grid,
                             double ode_rel_tol) {
    SolveReport report;
    report.t_grid = t_grid;
    const StateTriple state0 = initial_data_transform(phi, psi, xi, alpha, model);
    report.reference = reference_integrate(model, alpha, state0, t_grid, ode_rel_tol);
    std::vector<Eigen::VectorXcd> closed, semi_u, semi_full, ref_full;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        const double t = t_grid[k];
        report.closed_form.push_back(closed_form_solution(phi, psi, xi, alpha, model, t));
        report.semigroup.push_back(propagate_semigroup(model, alpha, state0, t));
        closed.push_back(report.closed_form.back());
        semi_u.push_back(report.semigroup.back().u);
        semi_full.push_back(report.semigroup.back().stacked());
        ref_full.push_back(report.reference[k].stacked());
        const Eigen::VectorXcd& u = report.closed_form.back();
        report.fractional_norms.push_back({fractional_norm(u, 0.0, model),
                                           fractional_norm(u, alpha / 3.0, model),
                                           fractional_norm(u, 2.0 * alpha / 3.0, model),
                                           fractional_norm(u, alpha, model)});
    }
    report.max_rel_err_closed_vs_semigroup = pairwise_rel_err(closed, semi_u);
    report.max_rel_err_semigroup_vs_reference = pairwise_rel_err(semi_full, ref_full);
    return report;
}

}  // namespace accretia
