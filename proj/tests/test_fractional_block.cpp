#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "accretia/fractional_block.hpp"
#include "accretia/linalg.hpp"
#include "models_common.hpp"

using namespace accretia;
using std::numbers::pi;

TEST_CASE("upsilon values") {
    CHECK(upsilon(0.0, 0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(upsilon(0.0, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(upsilon(0.0, 2) == doctest::Approx(0.0).epsilon(1e-14));

    CHECK(upsilon(1.0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(upsilon(1.0, 1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(upsilon(1.0, 2) == doctest::Approx(3.0).epsilon(1e-14));

    CHECK(upsilon(0.5, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(upsilon(0.5, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(upsilon(0.5, 2) == doctest::Approx(2.0).epsilon(1e-14));

    // the three values always sum to 3
    for (int k = 0; k <= 20; ++k) {
        const double alpha = k / 20.0;
        CHECK(upsilon(alpha, 0) + upsilon(alpha, 1) + upsilon(alpha, 2) ==
              doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("sin triple identity") {
    CHECK(sin_triple_identity_check({0.0}) == doctest::Approx(0.0));
    CHECK(sin_triple_identity_check({1.0 / 3.0}) < 1e-15);
    std::vector<double> grid;
    for (int k = 0; k < 1000; ++k) grid.push_back(k / 999.0);
    CHECK(sin_triple_identity_check(grid) <= 1e-14);
}

TEST_CASE("closed_form_fractional_block endpoints") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        const int n = 3 * model.dim();
        const Eigen::MatrixXcd at0 = closed_form_fractional_block(model, 0.0).flatten();
        CHECK((at0 - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-12);
        const Eigen::MatrixXcd block = assemble_block(model).flatten();
        const Eigen::MatrixXcd at1 = closed_form_fractional_block(model, 1.0).flatten();
        CHECK((at1 - block).norm() <= 1e-11 * block.norm());
    }
}

TEST_CASE("closed_form_fractional_block scalar half power") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    const Eigen::MatrixXcd got = closed_form_fractional_block(one, 0.5).flatten();
    Eigen::MatrixXcd expected(3, 3);
    expected << 2, -2, -1, 1, 2, -2, 2, 1, 2;
    expected /= 3.0;
    CHECK((got - expected).norm() < 1e-13);

    const EigenDecomposition d = eigendecompose(got);
    CHECK(hausdorff_distance({d.values[0], d.values[1], d.values[2]},
                             {Complex(1, 0), std::polar(1.0, pi / 3.0),
                              std::polar(1.0, -pi / 3.0)}) < 1e-12);
}

TEST_CASE("oracle equivalence across alpha") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        const Eigen::MatrixXcd flat = assemble_block(model).flatten();
        for (int k = 1; k <= 9; ++k) {
            const double alpha = 0.1 * k;
            CAPTURE(alpha);
            const Eigen::MatrixXcd closed =
                closed_form_fractional_block(model, alpha).flatten();
            const Eigen::MatrixXcd oracle = principal_matrix_power(flat, alpha);
            CHECK((closed - oracle).norm() <= 1e-8 * oracle.norm());
        }
    }
}

TEST_CASE("spectral mapping of the fractional block") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        const double alpha = 0.55;
        const Eigen::MatrixXcd closed = closed_form_fractional_block(model, alpha).flatten();
        const EigenDecomposition d = eigendecompose(closed);
        std::vector<Complex> got(d.values.data(), d.values.data() + d.values.size());
        std::vector<Complex> predicted;
        for (const Complex& lambda : spectrum_block(model)) {
            predicted.push_back(std::pow(lambda, alpha));
        }
        CHECK(hausdorff_distance(got, predicted) <= 1e-9);
    }
}

TEST_CASE("semigroup law in alpha") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        const Eigen::MatrixXcd a = closed_form_fractional_block(model, 0.35).flatten();
        const Eigen::MatrixXcd b = closed_form_fractional_block(model, 0.45).flatten();
        const Eigen::MatrixXcd ab = closed_form_fractional_block(model, 0.8).flatten();
        CHECK((a * b - ab).norm() <= 1e-9 * ab.norm());
    }
}

TEST_CASE("alpha_star") {
    CHECK(alpha_star(0.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(alpha_star(pi / 2.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(alpha_star(pi / 4.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // strictly decreasing
    double prev = alpha_star(0.0);
    for (int k = 1; k <= 8; ++k) {
        const double cur = alpha_star(k * pi / 16.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("classify_spectrum_sectors") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    const SectorClassification c = classify_spectrum_sectors(one, 0.5);
    REQUIRE(c.gamma1.size() == 1);
    REQUIRE(c.gamma2.size() == 1);
    REQUIRE(c.gamma3.size() == 1);
    CHECK(std::abs(c.gamma1[0] - Complex(1, 0)) < 1e-13);
    CHECK(std::abs(c.gamma2[0] - std::polar(1.0, pi / 3.0)) < 1e-13);
    CHECK(std::abs(c.gamma3[0] - std::polar(1.0, -pi / 3.0)) < 1e-13);
    CHECK(c.max_abs_arg == doctest::Approx(pi / 3.0).epsilon(1e-12));

    // boundary ray at omega = pi/2, alpha = 3/5 hits the imaginary axis
    const SectorialModel ray = make_diag_sectorial({1.0}, {pi / 2.0}, pi / 2.0);
    CHECK(classify_spectrum_sectors(ray, 0.6).max_abs_arg ==
          doctest::Approx(pi / 2.0).epsilon(1e-12));

    // max_abs_arg decreases monotonically as alpha -> 0
    double prev_angle = 10.0;
    for (double alpha : {0.8, 0.6, 0.4, 0.2, 0.05}) {
        const double angle = classify_spectrum_sectors(ray, alpha).max_abs_arg;
        CHECK(angle < prev_angle);
        prev_angle = angle;
    }

    // sector inclusion invariant
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        if (!model.zero_in_resolvent) continue;
        const double alpha = 0.5;
        const SectorClassification cls = classify_spectrum_sectors(model, alpha);
        const double half = alpha * model.omega / 3.0 + 1e-10;
        const double center = 2.0 * pi * alpha / 3.0;
        for (const Complex& p : cls.gamma1) CHECK(std::abs(std::arg(p)) <= half);
        for (const Complex& p : cls.gamma2) CHECK(std::abs(std::arg(p) - center) <= half);
        for (const Complex& p : cls.gamma3) CHECK(std::abs(std::arg(p) + center) <= half);
        CHECK(cls.gamma1.size() + cls.gamma2.size() + cls.gamma3.size() ==
              spectrum_block(model).size());
    }
}

TEST_CASE("generation_verdict") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    CHECK(generation_verdict(one, 0.74) == GenerationVerdict::analytic);
    CHECK(generation_verdict(one, 0.76) == GenerationVerdict::not_generated);

    const SectorialModel ray = make_diag_sectorial({1.0}, {pi / 2.0}, pi / 2.0);
    CHECK(generation_verdict(ray, 0.6) == GenerationVerdict::strongly_continuous_boundary);

    CHECK(std::string(to_string(GenerationVerdict::analytic)) == "analytic");
    CHECK(std::string(to_string(GenerationVerdict::not_generated)) == "not_generated");

    // verdict flips at alpha_star for boundary-ray models at every omega
    for (double omega : {0.0, pi / 6.0, pi / 4.0, pi / 2.0}) {
        CAPTURE(omega);
        const SectorialModel m = make_diag_sectorial({1.0, 2.0}, {omega, -omega}, omega);
        const double star = alpha_star(omega);
        CHECK(generation_verdict(m, star - 0.01) == GenerationVerdict::analytic);
        CHECK(generation_verdict(m, star + 0.01) == GenerationVerdict::not_generated);
    }
}
