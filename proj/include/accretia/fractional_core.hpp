#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "accretia/operator_models.hpp"
#include "accretia/types.hpp"

namespace accretia {

/// Discretization of the Balakrishnan integral: the half-line is split at
/// split_point (defaults to ||A||_2 when unset) and each half is mapped to
/// [0,1] by a power substitution absorbing the endpoint singularity.
/// Gauss-Legendre nodes double until rel_tol is met or node_count is hit.
struct QuadratureSpec {
    int node_count = 4096;                    // maximum nodes per sub-interval
    std::optional<double> split_point;        // lambda separating the two halves
    double rel_tol = 1e-8;

    void validate() const {
        if (node_count < 8) throw std::invalid_argument("QuadratureSpec: node_count must be >= 8");
        if (!(rel_tol > 0.0) || rel_tol > 1e-2) {
            throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
        }
        if (split_point && !(*split_point > 0.0)) {
            throw std::invalid_argument("QuadratureSpec: split_point must be positive");
        }
    }
};

enum class PowerMethod { quadrature, oracle };

struct PowerResult {
    ComplexDenseMatrix matrix;
    double alpha;
    PowerMethod method;
    std::optional<double> residual_vs_oracle;  // relative Frobenius residual
};

/// Thrown when node doubling stalls before rel_tol; carries the residual the
/// quadrature did achieve.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_residual(achieved) {}
    double achieved_residual;
};

/// A^alpha by eigendecomposition with the principal branch of the logarithm.
/// alpha in (0, 1]; alpha = 1 returns the matrix itself.
PowerResult principal_power_oracle(const SectorialModel& model, double alpha);

/// A^p for an arbitrary real exponent via the same principal-branch route;
/// negative p requires 0 in the resolvent set. Internal building block for
/// the fractional block operator and fractional norms.
ComplexDenseMatrix principal_power(const SectorialModel& model, double p);

/// Direct quadrature of
///   A^alpha = sin(pi alpha)/pi * int_0^inf lambda^(alpha-1) A(lambda I + A)^{-1} dlambda,
/// with each resolvent evaluated by a linear solve. residual_vs_oracle is
/// filled whenever the eigendecomposition oracle is available.
PowerResult balakrishnan_power(const SectorialModel& model, double alpha,
                               const QuadratureSpec& quad = {});

/// principal_power_oracle at exponent 1/3.
PowerResult cube_root(const SectorialModel& model);

/// Sampled constant in the moment inequality
///   ||A^alpha x|| <= C ||x||^(1-alpha) ||Ax||^alpha :
/// returns the max ratio over `trials` random vectors.
double moment_inequality_probe(const SectorialModel& model, double alpha, int trials,
                               std::uint64_t seed);

}  // namespace accretia
