#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace accretia {

using Complex = std::complex<double>;

/// Square complex matrix with value semantics; the universal numeric carrier.
/// Construction rejects non-square shapes, empty matrices and non-finite
/// entries, so a ComplexDenseMatrix is always safe to feed downstream.
class ComplexDenseMatrix {
public:
    explicit ComplexDenseMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
        if (m_.rows() == 0 || m_.rows() != m_.cols()) {
            throw std::invalid_argument("ComplexDenseMatrix: matrix must be square and non-empty");
        }
        if (!m_.allFinite()) {
            throw std::invalid_argument("ComplexDenseMatrix: non-finite entry");
        }
    }

    static ComplexDenseMatrix identity(int n) {
        return ComplexDenseMatrix(Eigen::MatrixXcd::Identity(n, n));
    }

    static ComplexDenseMatrix zero(int n) {
        return ComplexDenseMatrix(Eigen::MatrixXcd::Zero(n, n));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& mat() const { return m_; }

private:
    Eigen::MatrixXcd m_;
};

}  // namespace accretia
