import math

import pytest

import szegolab as sz


def test_exact_ball_kernel_center():
    ball = sz.DomainSpec.unit_ball(2)
    assert ball.n == 2
    value = sz.exact_ball_kernel(sz.KernelKind.szego, 2, 1.0, [0j, 0j], [0j, 0j])
    assert value.real == pytest.approx(1.0 / math.pi**2, rel=1e-14)


def test_series_matches_exact():
    ball = sz.DomainSpec.unit_ball(2)
    series = sz.build_series(ball, sz.KernelKind.szego, 20)
    z = [0.3 + 0.1j, -0.2 + 0.05j]
    approx = series(z, z)
    exact = sz.exact_ball_kernel(sz.KernelKind.szego, 2, 1.0, z, z)
    assert approx.real == pytest.approx(exact.real, rel=1e-9)
    assert series.tail_bound(0.4) < 1e-6


def test_curvature_report_ball_center():
    ev = sz.exact_ball_evaluator(sz.KernelKind.szego, 2)
    row = sz.curvature_report(ev, [0j, 0j], [1.0 + 0j, 0j])
    assert row.g == pytest.approx(4.0, abs=1e-9)
    assert row.tau == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert row.beta == pytest.approx(4.0 * math.pi**3, rel=1e-9)
    assert row.R == pytest.approx(-1.0, abs=1e-8)
    assert row.Ric == pytest.approx(-1.5, abs=1e-5)


def test_limit_estimate_linear_data():
    L, err, warn = sz.limit_estimate([0.1, 0.05, 0.025], [0.52, 0.51, 0.505])
    assert L == pytest.approx(0.5, abs=1e-12)
    assert not warn


def test_theorem1_suite_exact_ball():
    ball = sz.DomainSpec.unit_ball(2)
    ev = sz.exact_ball_evaluator(sz.KernelKind.szego, 2)
    deltas = [0.2 * 2.0**-k for k in range(6)]
    reports = sz.run_theorem1_suite(ball, ev, [1.0 + 0j, 0j], [1.0 + 0j, 1.0 + 0j], deltas)
    assert len(reports) == 6
    assert all(r.rel_err < 1e-3 for r in reports)
    csv = sz.report_csv(reports)
    assert csv.splitlines()[0].startswith("experiment,delta,value")


def test_scaling_suite_and_cayley():
    ball = sz.DomainSpec.unit_ball(2)
    reports = sz.run_scaling_suite(ball, [0j, 1.0 + 0j], [2.0**-j for j in range(2, 7)])
    assert all(r.eta == pytest.approx(r.delta, rel=1e-10) for r in reports)
    assert all(r.q_deviation < 1e-10 for r in reports)
    image = sz.cayley([0j, -1.0 + 0j])
    assert max(abs(c) for c in image) < 1e-13


def test_fefferman_density_ball():
    ball = sz.DomainSpec.unit_ball(2)
    assert sz.fefferman_density(ball, [1.0 + 0j, 0j]) == pytest.approx(0.5, abs=1e-13)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(sz.SzegolabError):
        sz.exact_ball_kernel(sz.KernelKind.szego, 2, 1.0, [1.0 + 0j, 0j], [1.0 + 0j, 0j])
