#include "accretia/fractional_block.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "accretia/fractional_core.hpp"

namespace accretia {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kVerdictBand = 1e-9;
}  // namespace

double upsilon(double alpha, int j) {
    if (j < 0 || j > 2) throw std::invalid_argument("upsilon: j must be 0, 1 or 2");
    return 2.0 * std::cos(2.0 * kPi * (alpha + j) / 3.0) + 1.0;
}

double sin_triple_identity_check(const std::vector<double>& theta_grid) {
    double worst = 0.0;
    for (double theta : theta_grid) {
        const double lhs = std::sin(3.0 * theta * kPi);
        const double rhs = std::sin(theta * kPi) * (2.0 * std::cos(2.0 * theta * kPi) + 1.0);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

BlockOperator closed_form_fractional_block(const SectorialModel& model, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("closed_form_fractional_block: alpha must lie in [0, 1]");
    }
    if (!model.zero_in_resolvent) {
        throw std::invalid_argument("closed_form_fractional_block: requires 0 in the resolvent set");
    }
    if (!model.is_diagonalizable) {
        throw std::invalid_argument("closed_form_fractional_block: requires a diagonalizable model");
    }
    const int n = model.dim();
    // A^{(alpha+d)/3} for diagonal offsets d = i-j in {-2,...,2}
    std::array<Eigen::MatrixXcd, 5> powers;
    for (int d = -2; d <= 2; ++d) {
        powers[d + 2] = principal_power(model, (alpha + d) / 3.0).mat();
    }
    auto entry = [&](int i, int j) {
        const int d = i - j;
        const double sign = (d % 2 == 0) ? 1.0 : -1.0;
        const double coeff = sign * upsilon(alpha, ((d % 3) + 3) % 3) / 3.0;
        return ComplexDenseMatrix(coeff * powers[d + 2]);
    };
    return BlockOperator{n,
                         {entry(0, 0), entry(0, 1), entry(0, 2),
                          entry(1, 0), entry(1, 1), entry(1, 2),
                          entry(2, 0), entry(2, 1), entry(2, 2)},
                         BlockLabel::A_alpha_block};
}

double alpha_star(double omega) {
    if (omega < 0.0 || omega > kPi / 2.0 + 1e-12) {
        throw std::invalid_argument("alpha_star: omega must lie in [0, pi/2]");
    }
    return 3.0 * kPi / (4.0 * kPi + 2.0 * omega);
}

SectorClassification classify_spectrum_sectors(const SectorialModel& model, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("classify_spectrum_sectors: alpha must lie in (0, 1)");
    }
    if (!model.zero_in_resolvent) {
        throw std::invalid_argument("classify_spectrum_sectors: requires 0 in the resolvent set");
    }
    SectorClassification cls;
    cls.alpha = alpha;
    cls.omega = model.omega;
    const double center2 = 2.0 * kPi * alpha / 3.0;
    for (const Complex& lambda : spectrum_block(model)) {
        const Complex point = std::pow(lambda, alpha);
        const double arg = std::arg(point);
        cls.max_abs_arg = std::max(cls.max_abs_arg, std::abs(arg));
        const double d1 = std::abs(arg);
        const double d2 = std::abs(arg - center2);
        const double d3 = std::abs(arg + center2);
        if (d1 <= d2 && d1 <= d3) {
            cls.gamma1.push_back(point);
        } else if (d2 <= d3) {
            cls.gamma2.push_back(point);
        } else {
            cls.gamma3.push_back(point);
        }
    }
    return cls;
}

GenerationVerdict generation_verdict(const SectorialModel& model, double alpha) {
    const double worst = classify_spectrum_sectors(model, alpha).max_abs_arg;
    if (worst < kPi / 2.0 - kVerdictBand) return GenerationVerdict::analytic;
    if (worst <= kPi / 2.0 + kVerdictBand) return GenerationVerdict::strongly_continuous_boundary;
    return GenerationVerdict::not_generated;
}

const char* to_string(GenerationVerdict v) {
    switch (v) {
        case GenerationVerdict::analytic: return "analytic";
        case GenerationVerdict::strongly_continuous_boundary: return "strongly_continuous_boundary";
        case GenerationVerdict::not_generated: return "not_generated";
    }
    return "unknown";
}

}  // namespace accretia
