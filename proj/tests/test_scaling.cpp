#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "szegolab/scaling.hpp"

using namespace szegolab;

namespace {

std::mt19937 rng(59);

CVec random_point(int n, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(u(rng), u(rng));
    return radius * z / std::max(1.0, z.norm());
}

}  // namespace

TEST_CASE("p-matrix sends the gradient direction to ('0, |grad|^2)") {
    for (const auto& spec : {DomainSpec::unit_ball(2), DomainSpec::bumped_ball(0.05)}) {
        for (int trial = 0; trial < 10; ++trial) {
            CVec q = random_point(2, 1.0);
            const auto frame = nearest_boundary_point(spec, 0.95 * q / q.norm());
            const auto jet = evaluate_jet(spec, frame.p);
            const auto phi1 = build_p_matrix(jet, frame.p);
            // rows of P pair with the gradient: P grad_zbar = ('0, |grad|^2)
            const CVec image = phi1.P * jet.grad_zbar;
            CHECK(image.head(1).norm() < 1e-12);
            CHECK(std::abs(image(1) - jet.grad_zbar.squaredNorm()) < 1e-12);
            CHECK(std::abs(phi1.P.determinant()) > 1e-12);
        }
    }
}

TEST_CASE("second-order coefficients: a1 symmetric, b1 Hermitian positive block") {
    const auto spec = DomainSpec::bumped_ball(0.05);
    CVec q = random_point(2, 1.0);
    const auto frame = nearest_boundary_point(spec, 0.95 * q / q.norm());
    const auto jet = evaluate_jet(spec, frame.p);
    const auto coeffs = second_order_coeffs(jet, build_p_matrix(jet, frame.p));
    CHECK((coeffs.a1 - coeffs.a1.transpose()).norm() < 1e-13);
    CHECK((coeffs.b1 - coeffs.b1.adjoint()).norm() < 1e-13);
    CHECK(coeffs.b1(0, 0).real() > 0.0);  // tangential Levi block, n = 2
}

TEST_CASE("siegel model scaling is the pure dilation") {
    const auto spec = DomainSpec::siegel(2);
    for (double t : {0.3, 0.1, 0.01}) {
        CVec zeta(2);
        zeta << 0.0, cplx(-t, 0.0);
        const auto map = build_scaling(spec, zeta);
        CHECK(map.eta == doctest::Approx(t).epsilon(1e-10));
        CVec target(2);
        target << 0.0, cplx(-1.0, 0.0);
        CHECK((map(zeta) - target).norm() < 1e-10);
        CHECK((map.Q - CMat::Identity(2, 2)).norm() < 1e-10);
    }
}

TEST_CASE("ball scaling at the north-pole anchor is exact") {
    const auto spec = DomainSpec::unit_ball(2);
    const auto grid = polydisc_grid(2, 1.0, 1.0, 5);
    double prev_residual = 1e9;
    for (int j = 2; j <= 8; ++j) {
        const double delta = std::pow(2.0, -j);
        CVec zeta(2);
        zeta << 0.0, 1.0 - delta;  // chart rotation is trivial on the last axis
        const auto map = build_scaling(spec, zeta);
        CHECK(map.eta == doctest::Approx(delta).epsilon(1e-12));
        CHECK((map.Q - CMat::Identity(2, 2)).operatorNorm() < 1e-10);
        // image anchor: S(zeta) = b* = ('0, -1)
        CVec bstar(2);
        bstar << 0.0, cplx(-1.0, 0.0);
        CHECK((map(zeta) - bstar).norm() < 1e-10);
        const double res = scaled_defining_residual(spec, map, grid);
        CHECK(res == doctest::Approx(delta).epsilon(1e-8));
        CHECK(res < prev_residual);
        prev_residual = res;
    }
}

TEST_CASE("scaling derivative matches finite differences; determinant identity") {
    const auto spec = DomainSpec::bumped_ball(0.05);
    CVec q = random_point(2, 1.0);
    const auto frame = nearest_boundary_point(spec, 0.9 * q / q.norm());
    const CVec zeta = frame.p - 0.05 * frame.nu;
    const auto map = build_scaling(spec, zeta);

    const CMat D = map.derivative(zeta);
    const double h = 1e-6;
    for (int j = 0; j < 2; ++j) {
        CVec zp = zeta, zm = zeta;
        zp(j) += h;
        zm(j) -= h;
        const CVec col = (map(zp) - map(zm)) / (2.0 * h);
        CHECK((D.col(j) - col).norm() < 1e-6);
    }
    // det S' = det Q * eta^{-(n+1)/2}
    const cplx expected = map.Q.determinant() * std::pow(map.eta, -1.5);
    CHECK(std::abs(D.determinant() - expected) < 1e-8 * std::abs(expected));

    // round trip through the inverse
    const CVec w = map(zeta + 0.01 * random_point(2, 1.0));
    CHECK((map(map.inverse(w)) - w).norm() < 1e-9);
}

TEST_CASE("cayley transform: involution, base point, derivative") {
    CVec bstar(2);
    bstar << 0.0, cplx(-1.0, 0.0);
    CHECK(cayley(bstar).norm() < 1e-14);

    const CMat J = cayley_jacobian(bstar);
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = -1.0 / std::sqrt(2.0);
    expected(1, 1) = -0.5;
    CHECK((J - expected).norm() < 1e-14);

    for (int trial = 0; trial < 20; ++trial) {
        const CVec z = random_point(2, 0.9);
        CHECK((cayley(cayley(z)) - z).norm() < 1e-12);
        // image lies in the siegel-side domain
        const CVec w = cayley(z);
        CHECK(2.0 * w(1).real() + std::norm(w(0)) < 0.0);
    }

    CVec pole(2);
    pole << 0.3, 1.0;
    CHECK_THROWS_AS((void)cayley(pole), Error);
}

TEST_CASE("scaling suite report rows") {
    const auto spec = DomainSpec::unit_ball(2);
    CVec p0(2);
    p0 << 0.0, 1.0;
    std::vector<double> deltas;
    for (int j = 2; j <= 6; ++j) deltas.push_back(std::pow(2.0, -j));
    const auto reports = run_scaling_suite(spec, p0, deltas);
    REQUIRE(reports.size() == deltas.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].delta == doctest::Approx(deltas[i]));
        CHECK(reports[i].eta == doctest::Approx(deltas[i]).epsilon(1e-10));
        CHECK(reports[i].q_deviation < 1e-10);
        if (i) CHECK(reports[i].residual < reports[i - 1].residual);
    }
}
