# closed-form proximity operators used by the built-in problems
#
# Prox_{step h}(z) = argmin_u h(u) + 1/(2 step) ||u - z||^2

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ogaprox.utils import ConstraintViolated, DimensionMismatch, as_vector, sample_box


def _check_step(step):
    if not step > 0:
        raise ConstraintViolated(f"prox step must be positive, got {step}")


@dataclass(frozen=True)
class ProxMap:
    """prox oracle (step, anchor) -> point, with a text label"""
    evaluator: Callable
    description: str

    def __call__(self, step, anchor):
        _check_step(step)
        return self.evaluator(step, anchor)


@dataclass(frozen=True)
class CouplingProxMap:
    """prox oracle of the coupling in x: (step, dual point, anchor) -> primal point"""
    evaluator: Callable
    description: str

    def __call__(self, step, y, anchor):
        _check_step(step)
        return self.evaluator(step, y, anchor)


def prox_zero(step, anchor):
    """prox of the zero function, i.e. the identity

    :param step: step size, positive
    :type step: float
    :param anchor: point to evaluate at
    :type anchor: numpy.ndarray
    :return: copy of anchor
    :rtype: numpy.ndarray
    """
    _check_step(step)
    return np.array(anchor, dtype=np.float64, copy=True)


def prox_quadratic(nu):
    """prox map of g = (nu/2)||.||^2, which is z / (1 + step*nu)

    :param nu: modulus, nonnegative
    :type nu: float
    :return: prox oracle
    :rtype: ProxMap
    """
    if nu < 0:
        raise ConstraintViolated(f"modulus must be nonnegative, got {nu}")

    def evaluate(step, anchor):
        return np.asarray(anchor, dtype=np.float64) / (1.0 + step * nu)

    return ProxMap(evaluate, f"quadratic(nu={nu:g})")


def prox_bilinear_coupling(A, mu=0.0):
    """prox in x of (mu/2)||x||^2 + <Ax, y>

    The minimizer of (mu/2)||x||^2 + <Ax, y> + 1/(2 step)||x - anchor||^2
    is (anchor - step*A^T y) / (1 + step*mu).

    :param A: coupling matrix of shape (n2, n1)
    :type A: numpy.ndarray
    :param mu: strong convexity modulus, defaults to 0
    :type mu: float, optional
    :return: coupling prox oracle
    :rtype: CouplingProxMap
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    if mu < 0:
        raise ConstraintViolated(f"modulus must be nonnegative, got {mu}")
    n2, n1 = A.shape
    At = A.T.copy()

    def evaluate(step, y, anchor):
        y = np.asarray(y, dtype=np.float64)
        anchor = np.asarray(anchor, dtype=np.float64)
        if y.shape != (n2,) or anchor.shape != (n1,):
            raise DimensionMismatch(
                f"coupling prox expects y in R^{n2} and anchor in R^{n1}, "
                f"got {y.shape} and {anchor.shape}")
        return (anchor - step * (At @ y)) / (1.0 + step * mu)

    return CouplingProxMap(evaluate, f"bilinear(shape={A.shape}, mu={mu:g})")


def check_firm_nonexpansive(prox, step, dim, sample_count=100, rng_seed=0, radius=10.0):
    """smallest slack of <P(z)-P(z'), z-z'> - ||P(z)-P(z')||^2 on seeded pairs

    :param prox: prox oracle (step, anchor) -> point
    :type prox: Callable
    :param step: prox step
    :type step: float
    :param dim: dimension of the samples
    :type dim: int
    :return: minimum slack, >= -1e-10 for a firmly nonexpansive map
    :rtype: float
    """
    rng = np.random.default_rng(rng_seed)
    zs = sample_box(rng, sample_count, dim, radius)
    ws = sample_box(rng, sample_count, dim, radius)
    worst = np.inf
    for z, w in zip(zs, ws):
        d = as_vector(prox(step, z)) - as_vector(prox(step, w))
        worst = min(worst, float(np.dot(d, z - w) - np.dot(d, d)))
    return worst
