# problem model: oracle bundle and its sampled checks

import dataclasses
import math

import numpy as np
import pytest

from ogaprox.problem import (check_lipschitz, check_prox_optimality,
                             check_prox_small_step, check_saddle, f_value,
                             saddle_slack_ok, within)
from ogaprox.problems import CATALOG, bilinear, convex_strongly_concave
from ogaprox.utils import (ConstraintViolated, IndeterminateValue,
                           MissingSaddle, OracleDomainError)


@pytest.fixture(params=sorted(CATALOG))
def problem(request):
    return CATALOG[request.param].build()


@pytest.mark.core
def test_f_value():
    p = convex_strongly_concave(1.0)
    assert f_value(p, np.array([1.0]), np.array([1.0])) == pytest.approx(0.5)
    assert f_value(p, np.array([2.0]), np.array([0.0])) == 0.0


@pytest.mark.core
def test_f_value_indeterminate():
    p = dataclasses.replace(bilinear(), phi_value=lambda x, y: math.inf, g_value=lambda y: math.inf)
    with pytest.raises(IndeterminateValue):
        f_value(p, np.zeros(1), np.zeros(1))
    p = dataclasses.replace(bilinear(), phi_value=lambda x, y: math.inf)
    assert f_value(p, np.zeros(1), np.zeros(1)) == math.inf


@pytest.mark.core
def test_negative_constant_rejected():
    with pytest.raises(ConstraintViolated):
        dataclasses.replace(bilinear(), L_yy=-1.0)


@pytest.mark.core
def test_require_saddle():
    xstar, ystar, fstar = bilinear().require_saddle()
    assert fstar == 0.0 and not xstar.any() and not ystar.any()
    with pytest.raises(MissingSaddle):
        dataclasses.replace(bilinear(), saddle=None).require_saddle()


@pytest.mark.core
def test_lipschitz_check(problem):
    rep = check_lipschitz(problem, sample_count=100)
    assert rep.passed
    assert rep.samples == 100


@pytest.mark.core
def test_lipschitz_check_detects_understated_constant():
    rep = check_lipschitz(dataclasses.replace(bilinear(), L_yx=0.5))
    assert not rep.passed
    assert rep.max_violation > 0


@pytest.mark.core
def test_lipschitz_check_domain():
    p = dataclasses.replace(bilinear(), in_domain=lambda x, y: x[0] > 0)
    with pytest.raises(OracleDomainError):
        check_lipschitz(p)


@pytest.mark.core
def test_saddle_check(problem):
    assert saddle_slack_ok(check_saddle(problem), problem.f_star)


@pytest.mark.core
def test_prox_optimality(problem):
    assert check_prox_optimality(problem) <= 1e-10


@pytest.mark.core
def test_prox_optimality_without_gradients():
    p = dataclasses.replace(bilinear(), grad_x_phi=None)
    assert math.isnan(check_prox_optimality(p))


@pytest.mark.core
def test_prox_small_step():
    # bilinear coupling moves the anchor by exactly tau * A^T y
    ratios = check_prox_small_step(bilinear())
    assert ratios == pytest.approx([1.0, 1.0], rel=1e-6)


@pytest.mark.core
def test_within():
    assert within(1.0, 1.0 - 1e-12, 1e-9)
    assert not within(1.0, 0.9, 1e-9)
