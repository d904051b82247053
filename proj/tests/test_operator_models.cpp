#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "accretia/operator_models.hpp"
#include "models_common.hpp"

using namespace accretia;
using std::numbers::pi;

TEST_CASE("make_diag_sectorial basic construction") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    CHECK(one.dim() == 1);
    CHECK(one.omega == 0.0);
    CHECK(one.spectrum.size() == 1);
    CHECK(std::abs(one.spectrum[0] - Complex(1.0, 0.0)) < 1e-15);
    CHECK(one.zero_in_resolvent);
    CHECK(one.is_diagonalizable);

    const SectorialModel eight = make_diag_sectorial({8.0}, {0.0}, 0.0);
    CHECK(std::abs(eight.matrix.mat()(0, 0) - Complex(8.0, 0.0)) < 1e-15);

    const SectorialModel mixed =
        make_diag_sectorial({1.0, 2.0, 3.0}, {pi / 6.0, -pi / 6.0, 0.0}, pi / 6.0);
    CHECK(std::abs(mixed.matrix.mat()(0, 0) - std::polar(1.0, pi / 6.0)) < 1e-15);
    CHECK(std::abs(mixed.matrix.mat()(1, 1) - std::polar(2.0, -pi / 6.0)) < 1e-15);
    CHECK(std::abs(mixed.matrix.mat()(2, 2) - Complex(3.0, 0.0)) < 1e-15);
    // numerical-range half-angle approximates the exact max arg of the entries
    const double certified = certify_omega(mixed, 4096, 7);
    CHECK(certified <= pi / 6.0 + 1e-10);
    CHECK(certified >= pi / 6.0 - 0.05);
}

TEST_CASE("make_diag_sectorial rejects sector violations") {
    CHECK_THROWS_AS(make_diag_sectorial({1.0}, {pi / 4.0}, pi / 6.0), std::invalid_argument);
    CHECK_THROWS_AS(make_diag_sectorial({}, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_diag_sectorial({1.0, 2.0}, {0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_diag_sectorial({-1.0}, {0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("make_dirichlet_laplacian_1d") {
    const SectorialModel m1 = make_dirichlet_laplacian_1d(1, 1.0);
    CHECK(m1.dim() == 1);
    CHECK(std::abs(m1.matrix.mat()(0, 0) - Complex(2.0, 0.0)) < 1e-15);
    CHECK(m1.is_selfadjoint);
    CHECK(m1.omega == 0.0);

    // n=3, h=1: eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2)
    const SectorialModel m3 = make_dirichlet_laplacian_1d(3, 1.0);
    std::vector<double> evs;
    for (const Complex& ev : m3.spectrum) {
        CHECK(std::abs(ev.imag()) < 1e-12);
        evs.push_back(ev.real());
    }
    std::sort(evs.begin(), evs.end());
    CHECK(evs[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(evs[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(evs[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));

    // n=8, h=0.5: min eigenvalue matches the sine formula 4/h^2 sin^2(pi/(2(n+1)))
    const SectorialModel m8 = make_dirichlet_laplacian_1d(8, 0.5);
    double min_ev = 1e300;
    double max_ev = -1e300;
    for (const Complex& ev : m8.spectrum) {
        min_ev = std::min(min_ev, ev.real());
        max_ev = std::max(max_ev, ev.real());
    }
    const double h = 0.5;
    const double expected_min = 4.0 / (h * h) * std::pow(std::sin(pi / (2.0 * 9.0)), 2);
    CHECK(min_ev == doctest::Approx(expected_min).epsilon(1e-10));
    CHECK(min_ev > 0.0);
    CHECK(max_ev < 16.0);
}

TEST_CASE("make_rotated") {
    const SectorialModel scalar = make_rotated(make_diag_sectorial({1.0}, {0.0}, 0.0), pi / 4.0);
    CHECK(std::abs(scalar.matrix.mat()(0, 0) - std::polar(1.0, pi / 4.0)) < 1e-15);
    CHECK(scalar.omega == doctest::Approx(pi / 4.0));

    const SectorialModel pair =
        make_rotated(make_diag_sectorial({2.0, 3.0}, {0.0, 0.0}, 0.0), -pi / 6.0);
    CHECK(pair.omega == doctest::Approx(pi / 6.0));
    bool found2 = false;
    for (const Complex& ev : pair.spectrum) {
        if (std::abs(ev - std::polar(2.0, -pi / 6.0)) < 1e-12) found2 = true;
    }
    CHECK(found2);

    const SectorialModel wide = make_diag_sectorial({1.0}, {pi / 3.0}, pi / 3.0);
    CHECK_THROWS_AS(make_rotated(wide, pi / 4.0), std::invalid_argument);
}

TEST_CASE("certify_omega") {
    const SectorialModel pos = make_diag_sectorial({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}, 0.0);
    CHECK(certify_omega(pos, 256, 1) < 1e-12);

    // 1x1 numerical range is the single entry
    const SectorialModel single = make_diag_sectorial({1.0}, {pi / 6.0}, pi / 6.0);
    CHECK(certify_omega(single, 16, 1) == doctest::Approx(pi / 6.0).epsilon(1e-12));

    const SectorialModel two =
        make_diag_sectorial({1.0, 1.0}, {pi / 6.0, -pi / 6.0}, pi / 6.0);
    const double cert = certify_omega(two, 10000, 3);
    CHECK(cert <= pi / 6.0 + 1e-12);
    CHECK(cert >= pi / 6.0 - 0.02);
}

TEST_CASE("certify_omega determinism and rotation monotonicity") {
    const SectorialModel lap = make_dirichlet_laplacian_1d(4, 1.0);
    CHECK(certify_omega(lap, 512, 42) == certify_omega(lap, 512, 42));
    const double base = certify_omega(lap, 512, 42);
    for (double phi : {0.1, 0.3, pi / 4.0}) {
        CHECK(certify_omega(make_rotated(lap, phi), 512, 42) >= base - 1e-10);
    }
}

TEST_CASE("check_accretivity") {
    const AccretivityReport good =
        check_accretivity(make_diag_sectorial({1.0, 2.0}, {0.0, 0.0}, 0.0), 512, 11);
    CHECK(good.sector_inequality_holds);
    CHECK(good.shifted_invertible);

    // claimed omega = pi/6 but the entry sits at pi/3: the inequality fails
    SectorialModel lying = make_diag_sectorial({1.0}, {pi / 3.0}, pi / 3.0);
    lying.omega = pi / 6.0;
    const AccretivityReport bad = check_accretivity(lying, 512, 11);
    CHECK_FALSE(bad.sector_inequality_holds);
    CHECK(bad.worst_violation > 0.0);

    const AccretivityReport rotated = check_accretivity(
        make_rotated(make_dirichlet_laplacian_1d(4, 1.0), pi / 4.0), 512, 11);
    CHECK(rotated.sector_inequality_holds);
    CHECK(rotated.shifted_invertible);
}

TEST_CASE("spectral inclusion across the test matrix") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        for (const Complex& ev : model.spectrum) {
            CHECK(std::abs(std::arg(ev)) <= model.omega + 1e-10);
        }
    }
}
