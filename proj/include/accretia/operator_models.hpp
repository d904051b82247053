#pragma once

#include <cstdint>
#include <vector>

#include "accretia/types.hpp"

namespace accretia {

/// A model operator A together with a certified sector half-angle omega and
/// structural flags. Every constructor checks the spectral inclusion
/// |arg lambda| <= omega + angle_tol before returning.
struct SectorialModel {
    ComplexDenseMatrix matrix;
    double omega = 0.0;                   // sector half-angle, radians, in [0, pi/2]
    std::vector<Complex> spectrum;
    bool is_selfadjoint = false;
    bool is_diagonalizable = false;
    bool zero_in_resolvent = false;

    int dim() const { return matrix.dim(); }
};

inline constexpr double kDefaultAngleTol = 1e-10;

/// Diagonal operator with entries moduli[k] * exp(i * angles[k]) on the rays
/// of the sector S(omega). Rejects empty input and any angle outside
/// [-omega, omega].
SectorialModel make_diag_sectorial(const std::vector<double>& moduli,
                                   const std::vector<double>& angles, double omega,
                                   double angle_tol = kDefaultAngleTol);

/// 1-D Dirichlet Laplacian on n interior points with mesh width h:
/// tridiagonal with 2/h^2 on the diagonal and -1/h^2 off it. Self-adjoint,
/// positive definite, omega = 0.
SectorialModel make_dirichlet_laplacian_1d(int n, double h,
                                           double angle_tol = kDefaultAngleTol);

/// Multiplies the operator by exp(i*phi); the certified angle grows to
/// omega + |phi| and is rejected past pi/2 (leaves the m-accretive class).
SectorialModel make_rotated(const SectorialModel& model, double phi,
                            double angle_tol = kDefaultAngleTol);

/// Sampled half-angle of the numerical range: max |arg <Ax, x>| over
/// sample_count random unit vectors. Deterministic for a fixed seed.
double certify_omega(const SectorialModel& model, int sample_count, std::uint64_t seed);

struct AccretivityReport {
    bool sector_inequality_holds = false;  // |Im<Ax,x>| <= tan(omega) Re<Ax,x> on all samples
    bool shifted_invertible = false;       // I + A numerically invertible
    double worst_violation = 0.0;          // largest positive excess over the inequality
    double shifted_condition = 0.0;        // condition estimate of I + A
};

/// Sampled verification of the tan(omega) inequality plus invertibility of
/// I + A (the finite-dimensional maximality surrogate). Failures are
/// reported, never thrown.
AccretivityReport check_accretivity(const SectorialModel& model, int sample_count,
                                    std::uint64_t seed);

}  // namespace accretia
