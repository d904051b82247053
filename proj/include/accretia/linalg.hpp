#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "accretia/types.hpp"

namespace accretia {

struct EigenDecomposition {
    Eigen::MatrixXcd vectors;   // columns are right eigenvectors
    Eigen::VectorXcd values;
    double vector_cond;         // 2-norm condition of the eigenvector matrix
};

/// Dense eigendecomposition with the eigenvector condition number attached.
EigenDecomposition eigendecompose(const Eigen::MatrixXcd& m);

/// Operator 2-norm (largest singular value).
double spectral_norm(const Eigen::MatrixXcd& m);

/// Principal matrix power V diag(lambda_k^p) V^{-1}, p any real exponent.
/// Rejects eigenvalues on the branch cut (-inf, 0] when they would be raised
/// to a non-integer or negative power.
Eigen::MatrixXcd principal_matrix_power(const Eigen::MatrixXcd& m, double p,
                                        double max_vector_cond = 1e12);

/// Matrix exponential by eigendecomposition.
Eigen::MatrixXcd expm_eig(const Eigen::MatrixXcd& m);

/// Hausdorff distance between two finite point sets in the complex plane.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Deterministic complex-normal sampler (explicit Box-Muller over a fixed
/// 64-bit generator, so streams are reproducible across standard libraries).
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed);
    double real_normal();
    Complex complex_normal();
    Eigen::VectorXcd unit_vector(int dim);

private:
    double next_uniform();  // in (0, 1)
    std::uint64_t state_[4];
};

}  // namespace accretia
