#pragma once

#include <array>
#include <vector>

#include "accretia/fractional_block.hpp"
#include "accretia/operator_models.hpp"

namespace accretia {

/// Components (u, v, w) of a point in the phase space X = H^{2/3} x H^{1/3} x H.
struct StateTriple {
    Eigen::VectorXcd u, v, w;

    int dim() const { return static_cast<int>(u.size()); }
    Eigen::VectorXcd stacked() const;
    static StateTriple from_stacked(const Eigen::VectorXcd& y);
    static StateTriple zero(int dim);
};

/// Roots {a, b, -1} (in units of B = A^{alpha/3}) of the cubic factorization
/// x^3 + Upsilon_0 x^2 + Upsilon_0 x + 1 of the third-order equation.
struct FactorizationCoefficients {
    double alpha;
    Complex a;           // -exp(-2 pi i alpha / 3)
    Complex b;           // -exp(+2 pi i alpha / 3), conjugate of a
    Complex third_root;  // fixed at -1
};

/// The non-real root pair, validated against the cubic's coefficients before
/// return.
FactorizationCoefficients ab_coefficients(double alpha);

/// (c2, c1, c0) of the monic equation u''' + c2 A^{alpha/3} u'' +
/// c1 A^{2 alpha/3} u' + c0 A^alpha u = 0; equals (Upsilon_0, Upsilon_0, 1).
std::array<double, 3> third_order_coefficients(double alpha);

/// Maps third-order data (phi, psi, xi) = (u, u', u'')(0) to the first-order
/// state (u, v, w)(0) of the fractional system; validated against the
/// defining relations before return.
StateTriple initial_data_transform(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                   const Eigen::VectorXcd& xi, double alpha,
                                   const SectorialModel& model);

/// exp(-t 𝔸^alpha) applied to the state, by eigendecomposition of the
/// flattened closed-form block. Rejects alpha past the generation threshold.
StateTriple propagate_semigroup(const SectorialModel& model, double alpha,
                                const StateTriple& state0, double t);

/// u(t) by the explicit factorized formula: the three commuting semigroups
/// e^{taB}, e^{tbB}, e^{-tB} with B = A^{alpha/3}, combined with the
/// (b-a), (1+a), (1+b) denominators. Rejects the confluent-root regime
/// |b - a| < 1e-8 (alpha near 0).
Eigen::VectorXcd closed_form_solution(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                                      const Eigen::VectorXcd& xi, double alpha,
                                      const SectorialModel& model, double t);

/// Adaptive Dormand-Prince 5(4) integration of the flattened linear system;
/// the independent audit oracle for the two spectral routes.
std::vector<StateTriple> reference_integrate(const SectorialModel& model, double alpha,
                                             const StateTriple& state0,
                                             const std::vector<double>& t_grid, double rel_tol);

/// ||A^theta x||, the fractional-space norm of the vector.
double fractional_norm(const Eigen::VectorXcd& x, double theta, const SectorialModel& model);

enum class CoefficientSet { derived, printed };

/// Finite-difference residual of the third-order equation along the
/// closed-form solution. CoefficientSet::printed uses the rival coefficient
/// set (factor 3 Upsilon_0 with a duplicated second-derivative term), which
/// the residual shows to be O(1) instead of O(h^2).
double third_order_residual(const SectorialModel& model, double alpha,
                            const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                            const Eigen::VectorXcd& xi, const std::vector<double>& t_samples,
                            double h, CoefficientSet coefficients = CoefficientSet::derived);

/// Cross-validation of one (model, alpha, data) cell over a t-grid.
struct SolveReport {
    std::vector<double> t_grid;
    std::vector<Eigen::VectorXcd> closed_form;      // u(t) only
    std::vector<StateTriple> semigroup;
    std::vector<StateTriple> reference;
    double max_rel_err_closed_vs_semigroup = 0.0;
    double max_rel_err_semigroup_vs_reference = 0.0;
    // ||A^theta u(t)|| for theta in {0, alpha/3, 2 alpha/3, alpha}, per sample
    std::vector<std::array<double, 4>> fractional_norms;
};

SolveReport run_solve_report(const SectorialModel& model, double alpha,
                             const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi,
                             const Eigen::VectorXcd& xi, const std::vector<double>& t_grid,
                             double ode_rel_tol);

}  // namespace accretia
