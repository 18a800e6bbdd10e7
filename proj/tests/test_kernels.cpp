#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "szegolab/kernels.hpp"

using namespace szegolab;

namespace {

std::mt19937 rng(23);

CVec random_point(int n, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(u(rng), u(rng));
    return radius * z / std::max(1.0, z.norm());
}

const DomainSpec kBall = DomainSpec::unit_ball(2);

}  // namespace

TEST_CASE("truncated ball series matches the closed form") {
    const auto series = build_series(kBall, KernelKind::Szego, 40, 1.0, 32, 0);
    const auto bergman = series_from_table(kBall, KernelKind::Bergman, series.table);
    for (int trial = 0; trial < 40; ++trial) {
        const CVec z = 0.6 * random_point(2, 1.0);
        const CVec w = 0.6 * random_point(2, 1.0);
        const cplx sS = eval_kernel(series, z, w);
        const cplx eS = eval_exact_ball(KernelKind::Szego, 2, 1.0, z, w);
        CHECK(std::abs(sS - eS) < 1e-10 * std::abs(eS));
        const cplx sK = eval_kernel(bergman, z, w);
        const cplx eK = eval_exact_ball(KernelKind::Bergman, 2, 1.0, z, w);
        CHECK(std::abs(sK - eK) < 1e-10 * std::abs(eK));
    }
}

TEST_CASE("series coefficients are reciprocal norms") {
    const auto series = build_series(kBall, KernelKind::Szego, 8);
    CHECK(series.coefficient(1, 2) ==
          doctest::Approx(1.0 / series.table.at(1, 2).hardy).epsilon(1e-15));
    // ball c_alpha = (n - 1 + |alpha|)! / (c_n pi^n alpha!)
    CHECK(series.coefficient(0, 0) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
    CHECK(series.coefficient(2, 1) == doctest::Approx(24.0 / (2.0 * kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("kernel partials agree between series, closed form and differences") {
    const auto series = build_series(kBall, KernelKind::Szego, 40, 1.0, 32, 0);
    const CVec z = CVec(Eigen::Vector2cd(cplx(0.31, 0.12), cplx(-0.22, 0.05)));
    const CVec w = CVec(Eigen::Vector2cd(cplx(0.18, -0.27), cplx(0.09, 0.33)));
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> orders = {
        {{0}, {}},       {{}, {1}},       {{0, 1}, {}},    {{0}, {0}},
        {{1, 1}, {0}},   {{0, 1}, {0, 1}}};
    for (const auto& [zi, wi] : orders) {
        const cplx exact = eval_exact_ball_partial(KernelKind::Szego, 2, 1.0, z, w, zi, wi);
        const cplx approx = eval_kernel_partial(series, z, w, zi, wi);
        CHECK(std::abs(exact - approx) < 1e-9 * std::abs(exact));
    }
    // first-order z-derivative vs central differences of the closed form
    const double h = 1e-6;
    CVec zp = z, zm = z;
    zp(0) += h;
    zm(0) -= h;
    const cplx fd = (eval_exact_ball(KernelKind::Szego, 2, 1.0, zp, w) -
                     eval_exact_ball(KernelKind::Szego, 2, 1.0, zm, w)) /
                    (2.0 * h);
    const cplx an = eval_exact_ball_partial(KernelKind::Szego, 2, 1.0, z, w, {0}, {});
    CHECK(std::abs(fd - an) < 1e-6 * std::abs(an));
}

TEST_CASE("tail bound majorizes the observed truncation error") {
    const auto series = build_series(kBall, KernelKind::Szego, 40, 1.0, 32, 0);
    for (double rho : {0.4, 0.6, 0.75}) {
        const double bound = truncation_tail_bound(series, rho);
        CVec z(2);
        z << rho, 0.0;
        const double err =
            std::abs(eval_kernel(series, z, z) - eval_exact_ball(KernelKind::Szego, 2, 1.0, z, z));
        // roundoff floor: the bound can dip below double-precision noise
        CHECK(err <= bound + 1e-14);
        CHECK(bound < 1.0);  // decays with the degree at these radii
    }
    CHECK(truncation_tail_bound(series, 0.4) < truncation_tail_bound(series, 0.6));
}

TEST_CASE("ball automorphisms: involution, jacobian, inverse") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = random_ball_automorphism(2, rng);
        const CVec z = random_point(2, 0.8);
        // F^{-1} F = id
        CHECK((F.inverse()(F(z)) - z).norm() < 1e-12);
        // automorphisms preserve the ball
        CHECK(F(z).norm() < 1.0);
        // jacobian vs finite differences
        const CMat J = F.complex_jacobian(z);
        const double h = 1e-7;
        for (int j = 0; j < 2; ++j) {
            CVec zp = z, zm = z;
            zp(j) += h;
            zm(j) -= h;
            const CVec col = (F(zp) - F(zm)) / (2.0 * h);
            CHECK((J.col(j) - col).norm() < 1e-6);
        }
        CHECK(std::abs(J.determinant() - F.det_jacobian(z)) < 1e-12 * std::abs(F.det_jacobian(z)));
        // branch consistency: branch^{n+1} = (det J)^n
        const cplx branch = F.det_jacobian_branch(z);
        const cplx lhs = std::pow(branch, 3);
        const cplx rhs = std::pow(F.det_jacobian(z), 2);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
    CHECK_THROWS_AS((void)make_ball_automorphism(CVec(Eigen::Vector2cd(1.2, 0.0)),
                                                 CMat::Identity(2, 2)),
                    Error);
}

TEST_CASE("kernel transformation law under automorphisms") {
    const auto series = build_series(kBall, KernelKind::Szego, 40, 1.0, 32, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = random_ball_automorphism(2, rng);
        const CVec z = random_point(2, 0.55);
        const CVec w = random_point(2, 0.55);
        CHECK(transform_residual_exact(KernelKind::Szego, 1.0, F, z, w) < 1e-12);
        CHECK(transform_residual_exact(KernelKind::Bergman, 1.0, F, z, w) < 1e-12);
        CHECK(transform_residual_series(series, F, z, w) < 1e-8);
    }
}

TEST_CASE("SK quotient is the ball constant") {
    const auto [szego, bergman] = build_series_pair(kBall, 30, 1.0, 32, 0);
    const double target = 1.0 / (4.0 * kPi * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const CVec z = random_point(2, 0.5);
        CHECK(sk_invariant_exact_ball(2, 1.0, z) == doctest::Approx(target).epsilon(1e-13));
        CHECK(sk_invariant(szego, bergman, z) == doctest::Approx(target).epsilon(1e-8));
    }
}

TEST_CASE("series io round trip") {
    const auto series = build_series(kBall, KernelKind::Szego, 8);
    std::stringstream ss;
    write_series(ss, series);
    const auto back = read_series(ss, kBall);
    CHECK(back.kind == series.kind);
    CHECK(back.degree == series.degree);
    const CVec z = random_point(2, 0.5);
    CHECK(std::abs(eval_kernel(back, z, z) - eval_kernel(series, z, z)) == 0.0);
}

TEST_CASE("pole proximity is rejected") {
    CVec z(2), w(2);
    z << 1.0, 0.0;
    w << 1.0, 0.0;
    CHECK_THROWS_AS((void)eval_exact_ball(KernelKind::Szego, 2, 1.0, z, w), Error);
}
