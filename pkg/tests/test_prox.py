# closed-form prox maps

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from ogaprox.prox import (ProxMap, check_firm_nonexpansive,
                          prox_bilinear_coupling, prox_quadratic, prox_zero)
from ogaprox.utils import ConstraintViolated, DimensionMismatch


@pytest.mark.core
def test_prox_zero_identity():
    anchor = np.array([1.5, -2.0])
    out = prox_zero(0.2, anchor)
    assert_array_equal(out, anchor)
    out[0] = 9.0
    assert anchor[0] == 1.5


@pytest.mark.core
@pytest.mark.parametrize('step', [0.0, -1.0])
def test_prox_rejects_nonpositive_step(step):
    with pytest.raises(ConstraintViolated):
        prox_zero(step, np.ones(1))
    with pytest.raises(ConstraintViolated):
        prox_quadratic(1.0)(step, np.ones(1))


@pytest.mark.core
def test_prox_quadratic():
    assert_allclose(prox_quadratic(1.0)(1.0, np.array([2.0])), [1.0])
    assert_allclose(prox_quadratic(2.0)(0.5, np.array([4.0, -4.0])), [2.0, -2.0])
    assert_array_equal(prox_quadratic(0.0)(7.0, np.array([3.0])), [3.0])
    assert isinstance(prox_quadratic(1.0), ProxMap)
    assert 'nu=1' in prox_quadratic(1.0).description
    with pytest.raises(ConstraintViolated):
        prox_quadratic(-1.0)


@pytest.mark.core
def test_prox_bilinear_coupling():
    coupling = prox_bilinear_coupling([[1.0]])
    assert coupling(0.2, np.array([1.2]), np.array([1.0]))[0] == pytest.approx(0.76, abs=1e-15)
    assert coupling(5.0, np.array([0.0]), np.array([0.25]))[0] == 0.25
    coupling_mu = prox_bilinear_coupling([[1.0]], mu=1.0)
    assert coupling_mu(2.0 / 3.0, np.array([0.0]), np.array([1.0]))[0] == pytest.approx(0.6, abs=1e-15)


@pytest.mark.core
def test_prox_bilinear_coupling_rectangular():
    A = np.array([[1.0, 2.0], [0.0, 1.0], [3.0, 0.0]])
    coupling = prox_bilinear_coupling(A, mu=0.5)
    y, anchor, tau = np.array([1.0, -1.0, 0.5]), np.array([0.3, 0.1]), 0.4
    u = coupling(tau, y, anchor)
    # first-order condition of (mu/2)|u|^2 + <Au, y> + |u - anchor|^2 / (2 tau)
    assert_allclose(0.5 * u + A.T @ y + (u - anchor) / tau, np.zeros(2), atol=1e-14)
    with pytest.raises(DimensionMismatch):
        coupling(tau, np.ones(2), anchor)


@pytest.mark.core
def test_firm_nonexpansive_check():
    assert check_firm_nonexpansive(prox_quadratic(2.0), 0.8, 3) >= -1e-10
    assert check_firm_nonexpansive(prox_zero, 0.8, 2) >= -1e-10
    assert check_firm_nonexpansive(lambda step, z: 2.0 * z, 0.8, 2) < 0


@pytest.mark.core
def test_prox_quadratic_contraction():
    rng = np.random.default_rng(3)
    nu, sigma = 2.0, 0.75
    prox = prox_quadratic(nu)
    for _ in range(50):
        z, w = rng.uniform(-10, 10, size=(2, 3))
        lhs = np.linalg.norm(prox(sigma, z) - prox(sigma, w))
        assert lhs <= np.linalg.norm(z - w) / (1.0 + sigma * nu) * (1 + 1e-12)
