#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "szegolab/domain.hpp"

using namespace szegolab;

namespace {

std::mt19937 rng(7);

CVec random_point(int n, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(u(rng), u(rng));
    return radius * z / std::max(1.0, z.norm());
}

// central differences of r on the 2n real coordinates
double fd_partial(const DomainSpec& spec, CVec z, int coord, double h) {
    const int n = spec.n();
    CVec zp = z, zm = z;
    const cplx step = coord < n ? cplx(h, 0) : cplx(0, h);
    zp(coord % n) += step;
    zm(coord % n) -= step;
    return (evaluate_jet(spec, zp).value - evaluate_jet(spec, zm).value) / (2 * h);
}

}  // namespace

TEST_CASE("analytic jets match finite differences") {
    for (const auto& spec : {DomainSpec::unit_ball(2), DomainSpec::bumped_ball(0.05),
                             DomainSpec::siegel(2)}) {
        for (int trial = 0; trial < 10; ++trial) {
            CVec z = random_point(2, 0.8);
            if (spec.kind() == DomainKind::Siegel) z(1) -= 1.0;
            const auto jet = evaluate_jet(spec, z);
            const double h = 1e-5;
            for (int c = 0; c < 4; ++c) {
                // dr/dx_i = 2 Re dr/dz_i, dr/dy_i = -2 Im dr/dz_i
                const double analytic = c < 2 ? 2.0 * jet.grad_z(c).real()
                                              : -2.0 * jet.grad_z(c % 2).imag();
                const double fd = fd_partial(spec, z, c, h);
                CHECK(std::abs(analytic - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("jet symmetry: hess_mixed Hermitian, hess_holo symmetric") {
    for (const auto& spec : {DomainSpec::unit_ball(2), DomainSpec::bumped_ball(0.08)}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto jet = evaluate_jet(spec, random_point(2, 0.95));
            CHECK((jet.hess_mixed - jet.hess_mixed.adjoint()).norm() < 1e-13);
            CHECK((jet.hess_holo - jet.hess_holo.transpose()).norm() < 1e-13);
        }
    }
}

TEST_CASE("ball Levi form is |X|^2") {
    for (int trial = 0; trial < 20; ++trial) {
        const CVec z = random_point(2, 0.9);
        const CVec X = random_point(2, 1.0);
        const auto jet = evaluate_jet(DomainSpec::unit_ball(2), z);
        CHECK(levi_form(jet, X) == doctest::Approx(X.squaredNorm()).epsilon(1e-13));
    }
}

TEST_CASE("strict pseudoconvexity certificates") {
    std::vector<CVec> grid;
    for (int trial = 0; trial < 200; ++trial) grid.push_back(random_point(2, 0.999));
    CHECK(levi_min_check(DomainSpec::unit_ball(2), grid) > 0.99);
    CHECK(levi_min_check(DomainSpec::bumped_ball(0.05), grid) > 0.0);

    const auto eps_max = bumped_ball_epsilon_max(0.01, 1.0);
    REQUIRE(eps_max.has_value());
    CHECK(*eps_max > 0.05);  // the working bump stays strictly pseudoconvex
    CHECK(levi_min_check(DomainSpec::bumped_ball(*eps_max + 0.05), grid) <= 0.0);
}

TEST_CASE("nearest boundary point on the ball is radial") {
    CVec z(2);
    z << 0.7, 0.0;
    const auto frame = nearest_boundary_point(DomainSpec::unit_ball(2), z);
    CHECK((frame.p - CVec(Eigen::Vector2cd(1.0, 0.0))).norm() < 1e-12);
    CHECK(frame.delta == doctest::Approx(0.3).epsilon(1e-12));
    CHECK((frame.nu - CVec(Eigen::Vector2cd(1.0, 0.0))).norm() < 1e-12);
}

TEST_CASE("siegel model projection along the normal axis") {
    CVec z(2);
    z << 0.0, cplx(-0.07, 0.0);
    const auto frame = nearest_boundary_point(DomainSpec::siegel(2), z);
    CHECK(frame.p.norm() < 1e-10);
    CHECK(frame.delta == doctest::Approx(0.07).epsilon(1e-10));
}

TEST_CASE("projection idempotence and tubular guard") {
    const auto spec = DomainSpec::bumped_ball(0.05);
    for (int trial = 0; trial < 20; ++trial) {
        CVec q = random_point(2, 1.0);
        q /= q.norm();
        const auto base = nearest_boundary_point(spec, 0.97 * q);
        const CVec z = base.p - 0.05 * base.nu;
        const auto again = nearest_boundary_point(spec, z);
        CHECK((again.p - base.p).norm() < 1e-10);
    }
    CVec deep(2);
    deep << 0.05, 0.0;
    CHECK_THROWS_WITH_AS(nearest_boundary_point(spec, deep), doctest::Contains("too far"),
                         Error);
}

TEST_CASE("tangential-normal splitting") {
    CVec nu(2), X(2);
    nu << 0.0, 1.0;
    X << 1.0, 2.0;
    BoundaryFrame frame;
    frame.nu = nu;
    const auto [XH, XN] = split_tangential_normal(frame, X);
    CHECK((XH - CVec(Eigen::Vector2cd(1.0, 0.0))).norm() < 1e-14);
    CHECK((XN - CVec(Eigen::Vector2cd(0.0, 2.0))).norm() < 1e-14);

    for (int trial = 0; trial < 100; ++trial) {
        const auto spec = DomainSpec::bumped_ball(0.05);
        CVec q = random_point(2, 1.0);
        const auto f = nearest_boundary_point(spec, 0.95 * q / q.norm());
        const CVec Y = random_point(2, 1.0);
        const auto [YH, YN] = split_tangential_normal(f, Y);
        CHECK((YH + YN - Y).norm() < 1e-13);
        CHECK(std::abs(hdot(YH, f.nu)) < 1e-13);
        CHECK(YH.squaredNorm() + YN.squaredNorm() ==
              doctest::Approx(Y.squaredNorm()).epsilon(1e-12));
    }
}

TEST_CASE("bumped ball shares the low-|z2| boundary piece with the ball") {
    const auto bumped = DomainSpec::bumped_ball(0.05);
    const auto breaks = bumped.profile_breakpoints();
    REQUIRE(breaks.size() == 2);
    CHECK(breaks[0] == doctest::Approx(0.25));
    CHECK(breaks[1] == doctest::Approx(0.5));

    for (double s2 : {0.0, 0.1, 0.2, 0.2499}) {
        const double s1 = 1.0 - s2;
        CHECK(bumped.profile(s1, s2).value == doctest::Approx(0.0).epsilon(1e-15));
    }
    // bump active for s2 >= 1/2: domain strictly inside the ball there
    CHECK(bumped.profile(0.4, 0.6).value > 0.0);
}

TEST_CASE("reinhardt boundary parameterization stays on the zero set") {
    for (const auto& spec : {DomainSpec::unit_ball(2), DomainSpec::bumped_ball(0.05)}) {
        for (double t : {0.0, 0.3, 0.7, 1.0, 1.5, kPi / 2}) {
            const CVec z = reinhardt_boundary_point(spec, t);
            CHECK(std::abs(evaluate_jet(spec, z).value) < 1e-12);
        }
    }
}
