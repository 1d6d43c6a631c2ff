# invariant suites

import time

import pytest

from ogaprox import diagnostics, engine, verify
from ogaprox.problems import CATALOG, bilinear
from ogaprox.utils import ConstraintViolated


def assert_suite(name):
    table = verify.main(name)
    failed = table[~table['passed']]
    assert failed.empty, failed.to_string()
    assert set(table['suite']) == {name}


@pytest.mark.core
@pytest.mark.parametrize('name', ['problems', 'prox', 'schedules'])
def test_fast_suites(name):
    assert_suite(name)


@pytest.mark.acceptance
@pytest.mark.parametrize('name', ['engine', 'counterexample', 'certificates', 'ergodic', 'sandwich', 'rates'])
def test_long_suites(name):
    assert_suite(name)


@pytest.mark.acceptance
def test_bilinear_rate_run_within_five_seconds():
    start = time.perf_counter()
    problem = bilinear()
    trace = engine.run(problem, CATALOG['bilinear'].regime, [1.0], [1.0], verify.RATE_ITERS)
    fit = diagnostics.fit_rate(verify.value_error_frame(problem, trace), window=(100, verify.RATE_ITERS))
    elapsed = time.perf_counter() - start
    assert trace.error is None
    assert fit.value == pytest.approx(-2.0, abs=0.05)
    assert elapsed < 5.0


@pytest.mark.acceptance
def test_ergodic_suite_checks_every_k():
    table = verify.main('ergodic')
    jensen = table[table['check'].str.contains('Jensen')]
    assert len(jensen) == len(CATALOG)
    assert jensen['check'].str.endswith(f'every k <= {verify.ERGODIC_ITERS}').all()
    assert jensen['passed'].all()


@pytest.mark.acceptance
def test_csc_rate_detail_reports_measured_slope():
    table = verify.main('rates')
    detail = table.loc[table['check'].str.startswith('csc value error'), 'detail'].iloc[0]
    assert detail.startswith('slope -')
    assert '[-2.3, -1.7]' in detail


@pytest.mark.core
def test_unknown_suite():
    with pytest.raises(ConstraintViolated):
        verify.main('nope')
