#pragma once

#include <array>
#include <vector>

#include "accretia/operator_models.hpp"
#include "accretia/types.hpp"

namespace accretia {

enum class BlockLabel { A_block, A_alpha_block, resolvent_block };

/// 3x3 grid of equally sized complex blocks on X = H^{2/3} x H^{1/3} x H;
/// represents the linearization, its fractional powers or its resolvents.
struct BlockOperator {
    int block_dim;
    std::array<ComplexDenseMatrix, 9> blocks;  // row-major grid
    BlockLabel label;

    const ComplexDenseMatrix& block(int i, int j) const { return blocks[3 * i + j]; }

    /// Dense (3*block_dim)^2 matrix whose 3x3 partition reproduces the blocks.
    Eigen::MatrixXcd flatten() const;
};

/// The block linearization [[0, -I, 0], [0, 0, -I], [A, 0, 0]] of the
/// third-order equation u''' + Au = 0.
BlockOperator assemble_block(const SectorialModel& model);

/// Closed-form (lambda I - 𝔸)^{-1}: every block is a polynomial in lambda
/// times (lambda^3 I - A)^{-1}. Rejects lambda with lambda^3 within 1e-12 of
/// the spectrum of A.
BlockOperator resolvent_closed_form(const SectorialModel& model, Complex lambda);

/// Spectrum by the cube-root mapping: for each eigenvalue r e^{i theta} of A
/// the triple r^{1/3} e^{i theta/3}, r^{1/3} e^{i(theta±2pi)/3}.
std::vector<Complex> spectrum_block(const SectorialModel& model);

enum class ProbeNorm { flat, weighted };

struct ResolventProbeReport {
    std::vector<double> lambda_grid;
    std::vector<double> norms;  // ||(lambda I + 𝔸)^{-1}|| on the grid
    double fitted_M = 0.0;      // max lambda * norm
    double fitted_K = 0.0;      // max (lambda + 1) * norm
    ProbeNorm norm_kind = ProbeNorm::weighted;
};

/// Samples ||(lambda I + 𝔸)^{-1}|| on a positive grid and fits the constants
/// of the M/lambda and K/(lambda+1) bounds. The weighted variant measures in
/// the X-norm, conjugating by diag(A^{2/3}, A^{1/3}, I).
ResolventProbeReport resolvent_bound_probe(const SectorialModel& model,
                                           const std::vector<double>& lambda_grid,
                                           ProbeNorm norm_kind = ProbeNorm::weighted);

/// Default probe grid: 40 logarithmically spaced points in [1e-3, 1e6].
std::vector<double> default_lambda_grid(int points = 40);

/// Spectral abscissa of -𝔸: max Re over -sigma(𝔸). Positive growth with the
/// size of sigma(A) is the evidence that -𝔸 generates no semigroup.
double nongeneration_evidence(const SectorialModel& model);

}  // namespace accretia
