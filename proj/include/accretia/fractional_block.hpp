#pragma once

#include <vector>

#include "accretia/block_linearization.hpp"
#include "accretia/operator_models.hpp"

namespace accretia {

/// Upsilon_j^alpha = 2 cos(2 pi (alpha + j)/3) + 1, j in {0, 1, 2}.
double upsilon(double alpha, int j);

/// Max over the grid of |sin(3 theta pi) - sin(theta pi)(2 cos(2 theta pi) + 1)|,
/// the identity behind the closed-form block representation.
double sin_triple_identity_check(const std::vector<double>& theta_grid);

/// Closed-form fractional power of the block linearization: the block-Toeplitz
/// grid with entry (i,j) = (-1)^{i-j}/3 * Upsilon_{(i-j mod 3)} * A^{(alpha+i-j)/3}.
/// alpha = 0 gives the identity, alpha = 1 gives the linearization itself.
/// Requires 0 in the resolvent set (negative exponents) and diagonalizability.
BlockOperator closed_form_fractional_block(const SectorialModel& model, double alpha);

/// Generation threshold 3 pi / (4 pi + 2 omega); decreasing from 3/4 at
/// omega = 0 to 3/5 at omega = pi/2.
double alpha_star(double omega);

/// Partition of sigma(𝔸^alpha) into the three sectors around arguments
/// {0, +2 pi alpha / 3, -2 pi alpha / 3}.
struct SectorClassification {
    std::vector<Complex> gamma1, gamma2, gamma3;
    double alpha = 0.0;
    double omega = 0.0;
    double max_abs_arg = 0.0;
};

SectorClassification classify_spectrum_sectors(const SectorialModel& model, double alpha);

enum class GenerationVerdict { analytic, strongly_continuous_boundary, not_generated };

/// Spectral-angle verdict: analytic when sigma(𝔸^alpha) stays strictly inside
/// the open right half-plane, boundary when it touches the imaginary axis,
/// not_generated past it.
GenerationVerdict generation_verdict(const SectorialModel& model, double alpha);

const char* to_string(GenerationVerdict v);

}  // namespace accretia
