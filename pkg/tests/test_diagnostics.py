# gaps, rate bounds, certificates and rate fits

import math

import numpy as np
import pandas as pd
import pytest

from ogaprox import diagnostics as dg
from ogaprox import engine
from ogaprox.problems import (CATALOG, bilinear, convex_strongly_concave,
                              counterexample_setup)
from ogaprox.schedules import ConstantUnit, LinearRate
from ogaprox.utils import (ConstraintViolated, DimensionMismatch,
                           InsufficientData, MalformedTrace)

ORIGIN = (np.zeros(1), np.zeros(1))


@pytest.fixture(scope='module')
def bilinear_run():
    p = bilinear()
    return p, engine.run(p, ConstantUnit(0.2, 0.2, 2.0), [1.0], [1.0], 300)


@pytest.fixture(scope='module')
def csc_run():
    entry = CATALOG['csc']
    p = entry.build()
    x0, y0 = entry.start_point(p)
    return p, engine.run(p, entry.regime, x0, y0, 300)


@pytest.mark.core
def test_certificate_first_step(bilinear_run):
    p, trace = bilinear_run
    cert = dg.certificate(p, trace.params(0), trace.state(0), trace.state(1), ORIGIN)
    assert cert.a_k == pytest.approx(5.0)
    assert cert.b_k1 == pytest.approx(4.828)
    assert cert.c_k == pytest.approx(0.164)
    assert cert.step_gap == pytest.approx(0.0, abs=1e-15)
    assert dg.descent_slack(cert) == pytest.approx(0.008)
    assert cert.c_floor == pytest.approx(0.122)
    assert dg.c_lower_slack(cert) == pytest.approx(0.042)


@pytest.mark.core
def test_qk_bound(bilinear_run):
    p, trace = bilinear_run
    slack = dg.check_qk_bound(p, trace.state(1), trace.params(1), np.zeros(1))
    assert slack == pytest.approx(0.36 - 0.288)
    with pytest.raises(ConstraintViolated):
        dg.check_qk_bound(p, trace.state(0), trace.params(0), np.zeros(1))


@pytest.mark.core
@pytest.mark.parametrize('run', ['bilinear_run', 'csc_run'])
def test_certificate_sweep(run, request):
    p, trace = request.getfixturevalue(run)
    rng = np.random.default_rng(1)
    points = dg.sample_points(rng, 5, p.dim_x, p.dim_y)
    for k in range(0, 299, 7):
        params, params_next = trace.params(k), trace.params(k + 1)
        for point in points:
            cert = dg.certificate(p, params, trace.state(k), trace.state(k + 1), point)
            scale = 1.0 + dg.certificate_scale(cert)
            assert dg.descent_slack(cert) >= -1e-8 * scale
            assert dg.c_lower_slack(cert) >= -1e-8 * scale
            nxt = cert._replace(a_k=dg.a_value(p, params_next, trace.state(k + 1), point))
            tele = dg.telescoping_slack(cert, nxt, params.t_k, params_next.t_k)
            assert tele >= -1e-8 * (1.0 + params.t_k * abs(cert.b_k1) + params_next.t_k * abs(nxt.a_k))
            if k >= 1:
                assert dg.check_qk_bound(p, trace.state(k), params, point[1]) >= -1e-8 * scale


@pytest.mark.core
def test_bound_convex_concave(bilinear_run):
    p, trace = bilinear_run
    xhat, yhat = trace.ergodic(1)
    lower, upper = dg.bound_convex_concave(1, 0.2, 0.2, trace.x0, trace.y0, *ORIGIN, xhat, yhat)
    assert upper == pytest.approx(2.6)
    assert lower == pytest.approx(-2.644)
    assert dg.value_error(p, xhat, yhat) == pytest.approx(0.912)
    with pytest.raises(ConstraintViolated):
        dg.bound_convex_concave(0, 0.2, 0.2, trace.x0, trace.y0, *ORIGIN, xhat, yhat)


@pytest.mark.core
def test_accelerated_bound_needs_two_steps(csc_run):
    p, trace = csc_run
    with pytest.raises(ConstraintViolated):
        dg.bound_convex_strongly_concave(1, 1.0, 0.5, 0.5, trace.x0, trace.y0, *ORIGIN, *trace.ergodic(1))
    assert all(math.isnan(v) for v in dg.regime_bounds(p, trace, 1))
    lower, upper, printed = dg.regime_bounds(p, trace, 2)
    assert lower <= upper


@pytest.mark.core
def test_counterexample_closed_form(bilinear_run):
    p, trace = bilinear_run
    corrected, printed = dg.counterexample_closed_form(trace, 1)
    assert corrected == pytest.approx(0.912)
    assert printed == pytest.approx(-0.07904)
    for k in (2, 10, 100, 299):
        xhat, yhat = trace.ergodic(k)
        assert dg.counterexample_closed_form(trace, k)[0] == pytest.approx(
            float(xhat[0] * yhat[0]), rel=1e-9, abs=1e-14)
    with pytest.raises(MalformedTrace):
        dg.counterexample_closed_form(trace, 300)
    wide = engine.run(bilinear(n=2), ConstantUnit(0.2, 0.2, 2.0), np.ones(2), np.ones(2), 5)
    with pytest.raises(DimensionMismatch):
        dg.counterexample_closed_form(wide, 1)


@pytest.mark.core
def test_rows_hold_the_sandwich(bilinear_run, csc_run):
    for p, trace in (bilinear_run, csc_run):
        rows = dg.build_rows(p, trace, cert_stride=5)
        assert len(rows) == trace.iters
        assert dg.row_violations(rows) == 0
        assert all(dg.gap_ok(r) and dg.sandwich_ok(r) for r in rows)
        assert not math.isnan(rows[4].cert_slack)
        assert math.isnan(rows[3].cert_slack)


@pytest.mark.core
def test_bilinear_gap_is_zero(bilinear_run):
    p, trace = bilinear_run
    for k in (1, 50, 300):
        assert dg.minimax_gap(p, *trace.ergodic(k)) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.core
def test_ergodic_inequalities(bilinear_run, csc_run):
    p, trace = bilinear_run
    for k in (1, 17, 300):
        sx, sy, scale = dg.ergodic_inequalities(p, trace, k)
        assert sx == pytest.approx(0.0, abs=1e-12 * (1 + scale))
        assert sy == pytest.approx(0.0, abs=1e-12 * (1 + scale))
    p, trace = csc_run
    for k in (1, 17, 300):
        sx, sy, scale = dg.ergodic_inequalities(p, trace, k)
        assert min(sx, sy) >= -1e-8 * (1 + scale)


@pytest.mark.core
def test_ergodic_sweep_matches_single_k(csc_run):
    p, trace = csc_run
    sx, sy, scale = dg.ergodic_sweep(p, trace, 60)
    assert len(sx) == len(sy) == len(scale) == 60
    for k in (1, 2, 17, 60):
        single = dg.ergodic_inequalities(p, trace, k)
        assert (sx[k - 1], sy[k - 1], scale[k - 1]) == pytest.approx(single, rel=1e-12, abs=1e-14)
    assert dg.first_violation(np.minimum(sx, sy), scale) is None
    with pytest.raises(MalformedTrace):
        dg.ergodic_sweep(p, trace, 301)


@pytest.mark.core
def test_weighted_sum_bounds(csc_run):
    p, trace = csc_run
    slack, lhs, rhs = dg.prop_inequality_check(p, trace, ORIGIN, 300)
    assert slack >= -1e-8 * (1 + abs(lhs) + abs(rhs))
    assert lhs >= -1e-8 * (1 + abs(lhs))
    _, lhs, rhs = dg.prop_inequality_check(p, trace, (trace.x0, trace.y0), 300)
    assert rhs == 0.0
    assert lhs <= 1e-8 * (1 + abs(lhs))
    for k in (1, 10, 300):
        slack, lhs, rhs = dg.ergodic_gap_bound_check(p, trace, (np.array([3.0]), np.array([-2.0])), k)
        assert slack >= -1e-8 * (1 + abs(lhs) + abs(rhs))
    assert min(dg.iterate_bound_check(p, trace, k) for k in range(301)) >= -1e-8
    lower, upper = dg.weighted_sandwich(p, trace, 300)
    weight_sum = math.exp(trace.log_weight_sums[299])
    assert lower <= weight_sum * dg.value_error(p, *trace.ergodic(300)) <= upper


@pytest.mark.core
def test_counterexample_rows():
    p, regime, x0, y0 = counterexample_setup(0.1)
    trace = engine.run(p, regime, x0, y0, 500)
    rows = dg.build_rows(p, trace)
    assert all(math.isnan(r.upper_bound) and math.isnan(r.cert_slack) for r in rows)
    assert min(r.f_ergodic for r in rows) > 0.495
    assert max(abs(r.gap_ergodic) for r in rows) <= 1e-10
    assert min(float(r.x[0]) for r in rows) > 0.5
    assert min(float(r.y[0]) for r in rows) > 0.99


@pytest.mark.core
def test_printed_lower_flag():
    row = dg.TraceRow(3, 0.1, 0.1, 1.0, 1.0, np.zeros(1), np.zeros(1), np.zeros(1), np.zeros(1),
                      0.0, value_error=0.01, printed_lower=0.5)
    assert not dg.printed_lower_ok(row)
    row.printed_lower = -0.5
    assert dg.printed_lower_ok(row)


@pytest.mark.core
def test_trace_frame_columns(bilinear_run):
    p, trace = bilinear_run
    frame = dg.trace_frame(dg.build_rows(p, trace))
    assert set(dg.TRACE_COLUMNS) <= set(frame.columns)
    assert {'x_0', 'y_0'} <= set(frame.columns)
    assert frame['k'].tolist() == list(range(1, 301))
    wide = engine.run(bilinear(n=4), ConstantUnit(0.2, 0.2, 2.0), np.ones(4), np.ones(4), 5)
    frame = dg.trace_frame(dg.build_rows(bilinear(n=4), wide))
    assert 'x_0' not in frame.columns


@pytest.mark.core
def test_read_trace(tmp_path):
    bad = tmp_path / 'bad.csv'
    pd.DataFrame({'k': [1, 2]}).to_csv(bad, index=False)
    with pytest.raises(MalformedTrace):
        dg.read_trace(bad)
    with pytest.raises(MalformedTrace):
        dg.read_trace(tmp_path / 'missing.csv')


@pytest.mark.core
def test_fit_rate_synthetic():
    k = np.arange(1, 1001)
    fit = dg.fit_rate(pd.DataFrame({'k': k, 'e': 5.0 / k}), 'e', window=(10, 1000))
    assert fit.value == pytest.approx(-1.0, abs=1e-9)
    assert fit.residual == pytest.approx(0.0, abs=1e-9)
    assert fit.points == 991
    k = np.arange(1, 201)
    fit = dg.fit_rate(pd.DataFrame({'k': k, 'e': 3.0 * 0.6 ** k}), 'e', model='geometric')
    assert fit.value == pytest.approx(0.6, abs=1e-9)
    assert fit.intercept == pytest.approx(math.log(3.0), abs=1e-6)


@pytest.mark.core
def test_fit_rate_errors():
    frame = pd.DataFrame({'k': np.arange(1, 21), 'e': np.ones(20)})
    with pytest.raises(InsufficientData):
        dg.fit_rate(frame, 'e', window=(1, 5))
    with pytest.raises(ConstraintViolated):
        dg.fit_rate(frame, 'e', model='exponential')
    with pytest.raises(MalformedTrace):
        dg.fit_rate(frame, 'value_error')
    zeros = pd.DataFrame({'k': np.arange(1, 21), 'e': np.zeros(20)})
    with pytest.raises(InsufficientData):
        dg.fit_rate(zeros, 'e')


@pytest.mark.core
def test_helpers():
    assert dg.default_model(LinearRate(0.6)) == 'geometric'
    assert dg.default_model(ConstantUnit(0.2, 0.2)) == 'power'
    assert dg.first_violation([0.1, -1.0, -2.0], [0.0, 0.0, 0.0]) == 1
    assert dg.first_violation([0.0, -1e-12], [1.0, 1.0]) is None
    points = dg.sample_points(np.random.default_rng(0), 4, 2, 3, radius=2.0)
    assert len(points) == 4
    assert points[0][0].shape == (2,) and points[0][1].shape == (3,)
    assert all(np.all(np.abs(x) <= 2.0) for x, _ in points)
    assert convex_strongly_concave().nu == 1.0
