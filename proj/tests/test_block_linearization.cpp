#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "accretia/block_linearization.hpp"
#include "accretia/linalg.hpp"
#include "models_common.hpp"

using namespace accretia;
using std::numbers::pi;

namespace {

std::vector<Complex> eigenvalues_of(const Eigen::MatrixXcd& m) {
    const EigenDecomposition d = eigendecompose(m);
    return {d.values.data(), d.values.data() + d.values.size()};
}

}  // namespace

TEST_CASE("assemble_block structure and spectrum") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    const Eigen::MatrixXcd f = assemble_block(one).flatten();
    Eigen::MatrixXcd expected(3, 3);
    expected << 0, -1, 0, 0, 0, -1, 1, 0, 0;
    CHECK((f - expected).norm() < 1e-15);
    // companion structure of lambda^3 = 1
    CHECK(hausdorff_distance(eigenvalues_of(f),
                             {Complex(1, 0), std::polar(1.0, 2 * pi / 3),
                              std::polar(1.0, -2 * pi / 3)}) < 1e-12);

    const SectorialModel eight = make_diag_sectorial({8.0}, {0.0}, 0.0);
    CHECK(hausdorff_distance(eigenvalues_of(assemble_block(eight).flatten()),
                             {Complex(2, 0), std::polar(2.0, 2 * pi / 3),
                              std::polar(2.0, -2 * pi / 3)}) < 1e-12);

    // diag(1, 8): cube-root triples of both eigenvalues
    const SectorialModel two = make_diag_sectorial({1.0, 8.0}, {0.0, 0.0}, 0.0);
    CHECK(hausdorff_distance(eigenvalues_of(assemble_block(two).flatten()),
                             spectrum_block(two)) < 1e-10);
}

TEST_CASE("resolvent_closed_form") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    // lambda = -1: (lambda^3 - 1)^{-1} = -1/2 appears in block (0, 2)
    const BlockOperator r = resolvent_closed_form(one, Complex(-1.0, 0.0));
    CHECK(std::abs(r.block(0, 2).mat()(0, 0) - Complex(-0.5, 0.0)) < 1e-14);

    // lambda^3 in the spectrum is rejected
    CHECK_THROWS_AS(resolvent_closed_form(one, Complex(1.0, 0.0)), std::invalid_argument);

    // closed form equals the direct dense inverse
    const SectorialModel two = make_diag_sectorial({2.0, 5.0}, {0.0, 0.0}, 0.0);
    const Complex lambda(0.0, 2.0);
    const Eigen::MatrixXcd direct =
        (lambda * Eigen::MatrixXcd::Identity(6, 6) - assemble_block(two).flatten()).inverse();
    CHECK((resolvent_closed_form(two, lambda).flatten() - direct).norm() / direct.norm() <
          1e-12);
}

TEST_CASE("resolvent identity on random admissible lambda") {
    GaussianSampler sampler(2024);
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        const Eigen::MatrixXcd flat = assemble_block(model).flatten();
        const Eigen::MatrixXcd id =
            Eigen::MatrixXcd::Identity(3 * model.dim(), 3 * model.dim());
        int accepted = 0;
        while (accepted < 20) {
            const Complex lambda = 2.0 * sampler.complex_normal();
            Eigen::MatrixXcd res;
            try {
                res = resolvent_closed_form(model, lambda).flatten();
            } catch (const std::invalid_argument&) {
                continue;  // lambda^3 collided with the spectrum; resample
            }
            ++accepted;
            CHECK((res * (lambda * id - flat) - id).norm() < 1e-10 * res.norm() * flat.norm() +
                                                                 1e-10);
        }
    }
}

TEST_CASE("spectrum_block formula") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    CHECK(hausdorff_distance(spectrum_block(one),
                             {Complex(1, 0), std::polar(1.0, 2 * pi / 3),
                              std::polar(1.0, -2 * pi / 3)}) < 1e-14);

    const SectorialModel rot = make_diag_sectorial({8.0}, {pi / 4.0}, pi / 4.0);
    CHECK(hausdorff_distance(spectrum_block(rot),
                             {std::polar(2.0, pi / 12.0), std::polar(2.0, pi / 12.0 + 2 * pi / 3),
                              std::polar(2.0, pi / 12.0 - 2 * pi / 3)}) < 1e-13);

    const SectorialModel lap = make_dirichlet_laplacian_1d(4, 1.0);
    CHECK(spectrum_block(lap).size() == 12);
    CHECK(hausdorff_distance(spectrum_block(lap),
                             eigenvalues_of(assemble_block(lap).flatten())) < 1e-10);
}

TEST_CASE("spectral mapping across the test matrix") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        CHECK(hausdorff_distance(spectrum_block(model),
                                 eigenvalues_of(assemble_block(model).flatten())) < 1e-9);
    }
}

TEST_CASE("sector decomposition of sigma(block)") {
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        if (!model.zero_in_resolvent) continue;
        constexpr double third = 2.0 * pi / 3.0;
        for (const Complex& p : spectrum_block(model)) {
            const double arg = std::arg(p);
            int memberships = 0;
            for (double center : {0.0, third, -third}) {
                if (std::abs(arg - center) <= model.omega / 3.0 + 1e-10) ++memberships;
            }
            CHECK(memberships == 1);
        }
    }
}

TEST_CASE("resolvent_bound_probe") {
    const SectorialModel one = make_diag_sectorial({1.0}, {0.0}, 0.0);
    const ResolventProbeReport single = resolvent_bound_probe(one, {1.0}, ProbeNorm::flat);
    const Eigen::MatrixXcd direct =
        (Eigen::MatrixXcd::Identity(3, 3) + assemble_block(one).flatten()).inverse();
    CHECK(single.norms[0] == doctest::Approx(spectral_norm(direct)).epsilon(1e-12));
    CHECK(std::isfinite(single.fitted_M));

    // lambda * norm approaches a constant at large lambda
    const ResolventProbeReport tail =
        resolvent_bound_probe(one, {1e3, 1e4, 1e5}, ProbeNorm::flat);
    for (std::size_t k = 0; k < tail.lambda_grid.size(); ++k) {
        const double scaled = tail.lambda_grid[k] * tail.norms[k];
        CHECK(scaled <= tail.fitted_M + 1e-12);
        CHECK(scaled == doctest::Approx(1.0).epsilon(1e-2));
    }

    // report invariant: norms[k] <= fitted_M / lambda[k] by construction
    for (const auto& [name, model] : accretia::testing::test_matrix()) {
        CAPTURE(name);
        const ResolventProbeReport report =
            resolvent_bound_probe(model, default_lambda_grid(), ProbeNorm::weighted);
        for (std::size_t k = 0; k < report.lambda_grid.size(); ++k) {
            CHECK(report.norms[k] <= report.fitted_M / report.lambda_grid[k] + 1e-12);
        }
        CHECK(std::isfinite(report.fitted_M));
        CHECK(std::isfinite(report.fitted_K));

        // fitted M is stable under grid doubling
        const ResolventProbeReport fine =
            resolvent_bound_probe(model, default_lambda_grid(80), ProbeNorm::weighted);
        CHECK(std::abs(fine.fitted_M - report.fitted_M) < 0.05 * report.fitted_M);
    }
}

TEST_CASE("nongeneration_evidence") {
    CHECK(nongeneration_evidence(make_diag_sectorial({1.0, 8.0, 27.0}, {0, 0, 0}, 0.0)) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(nongeneration_evidence(make_diag_sectorial({1.0}, {0.0}, 0.0)) ==
          doctest::Approx(0.5).epsilon(1e-12));

    const SectorialModel lap = make_dirichlet_laplacian_1d(8, 0.25);
    double max_ev = 0.0;
    for (const Complex& ev : lap.spectrum) max_ev = std::max(max_ev, ev.real());
    CHECK(nongeneration_evidence(lap) ==
          doctest::Approx(std::cbrt(max_ev) / 2.0).epsilon(1e-10));
}
