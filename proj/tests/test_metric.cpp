#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "szegolab/metric.hpp"

using namespace szegolab;

namespace {

std::mt19937 rng(41);

CVec random_point(int n, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cplx(u(rng), u(rng));
    return radius * z / std::max(1.0, z.norm());
}

const auto kEv = exact_ball_evaluator(KernelKind::Szego, 2);

// ball oracle: G = n [(1-|z|^2) I + zbar z^t] / (1-|z|^2)^2
CMat ball_metric(const CVec& z) {
    const double u = 1.0 - z.squaredNorm();
    return 2.0 * ((u * CMat::Identity(2, 2) + z.conjugate() * z.transpose()) / (u * u));
}

}  // namespace

TEST_CASE("log-kernel jet matches finite differences of log S") {
    const CVec z = CVec(Eigen::Vector2cd(cplx(0.31, -0.14), cplx(0.22, 0.18)));
    const auto jet = log_kernel_jet(kEv, z);
    const double h = 1e-4;
    auto logS = [&](const CVec& p) { return std::log(kEv.partial(p, p, {}, {}).real()); };
    // real-coordinate shift: a in {0,1} -> x_a, {2,3} -> y_{a-2}
    auto shifted = [&](int a, double s, int b, double t) {
        CVec p = z;
        p(a % 2) += a < 2 ? cplx(s, 0) : cplx(0, s);
        p(b % 2) += b < 2 ? cplx(t, 0) : cplx(0, t);
        return p;
    };
    auto fd2 = [&](int a, int b) {
        return (logS(shifted(a, h, b, h)) - logS(shifted(a, h, b, -h)) -
                logS(shifted(a, -h, b, h)) + logS(shifted(a, -h, b, -h))) /
               (4 * h * h);
    };
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            // d/dx_i d/dx_k + d/dy_i d/dy_k = 4 Re d11(i,k)
            const double sum = fd2(i, k) + fd2(i + 2, k + 2);
            CHECK(std::abs(sum - 4.0 * jet.d11(i, k).real()) < 1e-5);
            // d/dx_i d/dy_k = 2 Im(d11(i,k) - d20(i,k))
            const double mixed = fd2(i, k + 2);
            CHECK(std::abs(mixed - 2.0 * (jet.d11(i, k) - jet.d20(i, k)).imag()) < 1e-5);
        }
}

TEST_CASE("ball metric tensor: explicit oracle, center values") {
    for (int trial = 0; trial < 20; ++trial) {
        const CVec z = random_point(2, 0.8);
        const auto tensor = metric_tensor(log_kernel_jet(kEv, z));
        CHECK((tensor.G - ball_metric(z)).norm() < 1e-10 * tensor.G.norm());
        CHECK((tensor.G - tensor.G.adjoint()).norm() < 1e-13 * tensor.G.norm());
    }
    const auto at0 = metric_tensor(log_kernel_jet(kEv, CVec::Zero(2)));
    CHECK(at0.g == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(metric_length(at0, CVec(Eigen::Vector2cd(1.0, 0.0))) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("beta invariant is constant on the ball") {
    const double target = 4.0 * kPi * kPi * kPi;
    for (int trial = 0; trial < 50; ++trial) {
        const auto tensor = metric_tensor(log_kernel_jet(kEv, random_point(2, 0.85)));
        CHECK(beta_invariant(tensor, 2) == doctest::Approx(target).epsilon(1e-9));
    }
}

TEST_CASE("holomorphic sectional curvature of the ball is -2/n") {
    for (int trial = 0; trial < 20; ++trial) {
        const auto jet = log_kernel_jet(kEv, random_point(2, 0.8));
        const CVec X = random_point(2, 1.0);
        CHECK(sectional_curvature(jet, X) == doctest::Approx(-1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)sectional_curvature(log_kernel_jet(kEv, CVec::Zero(2)),
                                              CVec::Zero(2)),
                    Error);
}

TEST_CASE("sectional curvature is invariant under complex scaling of X") {
    const auto jet = log_kernel_jet(kEv, random_point(2, 0.7));
    const CVec X = random_point(2, 1.0);
    const double base = sectional_curvature(jet, X);
    for (const cplx lambda : {cplx(2.5, 0.0), cplx(0.0, 1.0), cplx(-0.3, 1.7)}) {
        CHECK(sectional_curvature(jet, CVec(lambda * X)) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("ricci curvature of the ball is -(n+1)/n") {
    for (int trial = 0; trial < 5; ++trial) {
        const CVec z = random_point(2, 0.6);
        const CVec X = random_point(2, 1.0);
        const auto r = ricci_curvature_detail(kEv, z, X);
        CHECK(r.value == doctest::Approx(-1.5).epsilon(1e-6));
        CHECK_FALSE(r.precision_warning);
        CHECK(r.residual < 1e-7);
    }
}

TEST_CASE("curvature report row on the ball") {
    const auto row = curvature_report(kEv, CVec::Zero(2), CVec(Eigen::Vector2cd(1.0, 0.0)));
    CHECK(row.tau == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(row.g == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(row.beta == doctest::Approx(4.0 * kPi * kPi * kPi).epsilon(1e-10));
    CHECK(row.R == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(row.Ric == doctest::Approx(-1.5).epsilon(1e-6));
    CHECK(row.tail_bound == 0.0);
}

TEST_CASE("metric pullback under ball automorphisms") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = random_ball_automorphism(2, rng);
        const CVec z = random_point(2, 0.7);
        CHECK(metric_pullback_residual(kEv, F, z) < 1e-9);
    }
}

TEST_CASE("truncated series evaluator honours the tail guard") {
    auto series = build_series(DomainSpec::unit_ball(2), KernelKind::Szego, 12, 1.0, 32, 0);
    auto ev = series_evaluator(std::move(series));
    ev.tail_rel_guard = 1e-10;
    CVec z(2);
    z << 0.9, 0.0;
    CHECK_THROWS_AS((void)log_kernel_jet(ev, z), Error);
    z << 0.2, 0.0;
    CHECK_NOTHROW((void)log_kernel_jet(ev, z));
}
