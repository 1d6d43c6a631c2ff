# saddle-point problem f(x, y) = Phi(x, y) - g(y) given through oracles

import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np

from ogaprox.utils import (ConstraintViolated, DualPoint, MissingSaddle,
                           OracleDomainError, PrimalPoint, as_vector, ext_sub,
                           norm, sample_box, tolerance)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SaddleProblem:
    """oracle bundle describing min_x max_y Phi(x, y) - g(y)

    All oracles are pure functions of their arguments. ``prox_coupling(tau, y, anchor)``
    must return the exact minimizer of Phi(., y) + 1/(2 tau)||. - anchor||^2 and
    ``prox_g(sigma, anchor)`` the exact Prox_{sigma g}(anchor).
    """
    phi_value: Callable[[PrimalPoint, DualPoint], float]
    grad_y_phi: Callable[[PrimalPoint, DualPoint], DualPoint]
    prox_coupling: Callable[[float, DualPoint, PrimalPoint], PrimalPoint]
    g_value: Callable[[DualPoint], float]
    prox_g: Callable[[float, DualPoint], DualPoint]
    dim_x: int
    dim_y: int
    L_yx: float = 0.0
    L_yy: float = 0.0
    mu: float = 0.0
    nu: float = 0.0
    saddle: Optional[Tuple[PrimalPoint, DualPoint]] = None
    f_star: Optional[float] = None
    label: str = "custom"
    grad_x_phi: Optional[Callable[[PrimalPoint, DualPoint], PrimalPoint]] = None
    grad_g: Optional[Callable[[DualPoint], DualPoint]] = None
    in_domain: Optional[Callable[[PrimalPoint, DualPoint], bool]] = None

    def __post_init__(self):
        for name in ("L_yx", "L_yy", "mu", "nu"):
            if getattr(self, name) < 0:
                raise ConstraintViolated(f"{name} must be nonnegative, got {getattr(self, name)}")

    def contains(self, x, y):
        return True if self.in_domain is None else bool(self.in_domain(x, y))

    def require_saddle(self):
        if self.saddle is None or self.f_star is None:
            raise MissingSaddle(f"problem {self.label!r} has no known saddle point")
        return self.saddle[0], self.saddle[1], self.f_star


def f_value(problem, x, y):
    """f(x, y) = Phi(x, y) - g(y)

    :param problem: saddle problem
    :type problem: SaddleProblem
    :param x: primal point
    :type x: numpy.ndarray
    :param y: dual point
    :type y: numpy.ndarray
    :return: extended-real value
    :rtype: float
    """
    return ext_sub(problem.phi_value(x, y), problem.g_value(y))


class LipschitzReport(NamedTuple):
    max_violation: float
    scale: float
    passed: bool
    samples: int


def check_lipschitz(problem, sample_count=200, box_radius=10.0, rng_seed=0):
    """sample ||grad_y(x,y) - grad_y(x',y')|| - (L_yx||x-x'|| + L_yy||y-y'||)

    :param problem: saddle problem
    :type problem: SaddleProblem
    :param sample_count: number of random pairs
    :type sample_count: int
    :param box_radius: half width of the sampling box
    :type box_radius: float
    :param rng_seed: seed of the sampler
    :type rng_seed: int
    :return: largest violation over the pairs and whether it is within tolerance
    :rtype: LipschitzReport
    """
    rng = np.random.default_rng(rng_seed)
    xs = sample_box(rng, 2 * sample_count, problem.dim_x, box_radius)
    ys = sample_box(rng, 2 * sample_count, problem.dim_y, box_radius)
    worst, scale = -np.inf, 0.0
    for i in range(sample_count):
        x, xp, y, yp = xs[2 * i], xs[2 * i + 1], ys[2 * i], ys[2 * i + 1]
        for px, py in ((x, y), (xp, yp)):
            if not problem.contains(px, py):
                raise OracleDomainError(f"sampled point outside the coupling domain: {px}, {py}")
        dgrad = norm(as_vector(problem.grad_y_phi(x, y)) - as_vector(problem.grad_y_phi(xp, yp)))
        bound = problem.L_yx * norm(x - xp) + problem.L_yy * norm(y - yp)
        worst = max(worst, dgrad - bound)
        scale = max(scale, dgrad, bound)
    passed = worst <= 1e-9 * (1.0 + scale)
    if not passed:
        logger.debug("lipschitz check failed on %s: violation %.3e", problem.label, worst)
    return LipschitzReport(float(worst), float(scale), passed, sample_count)


def check_saddle(problem, probe_count=100, box_radius=10.0, rng_seed=0):
    """minimum slack of f(x*, y) <= f* <= f(x, y*) over seeded probes

    :return: smallest slack (scaled tolerance already subtracted is up to the caller)
    :rtype: float
    """
    xstar, ystar, fstar = problem.require_saddle()
    rng = np.random.default_rng(rng_seed)
    xs = sample_box(rng, probe_count, problem.dim_x, box_radius)
    ys = sample_box(rng, probe_count, problem.dim_y, box_radius)
    worst = np.inf
    for x, y in zip(xs, ys):
        worst = min(worst,
                    fstar - f_value(problem, xstar, y),
                    f_value(problem, x, ystar) - fstar)
    return float(worst)


def check_prox_optimality(problem, sample_count=100, rng_seed=0, box_radius=10.0):
    """largest first-order residual of both prox oracles on seeded samples

    For u = prox_coupling(tau, y, a): grad_x Phi(u, y) + (u - a)/tau = 0.
    For v = prox_g(sigma, a): grad g(v) + (v - a)/sigma = 0.

    :return: maximum residual norm, nan when the gradient oracles are missing
    :rtype: float
    """
    if problem.grad_x_phi is None or problem.grad_g is None:
        return math.nan
    rng = np.random.default_rng(rng_seed)
    steps = rng.uniform(1e-3, 10.0, size=(sample_count, 2))
    anchors_x = sample_box(rng, sample_count, problem.dim_x, box_radius)
    anchors_y = sample_box(rng, sample_count, problem.dim_y, box_radius)
    duals = sample_box(rng, sample_count, problem.dim_y, box_radius)
    worst = 0.0
    for (tau, sigma), ax, ay, y in zip(steps, anchors_x, anchors_y, duals):
        u = as_vector(problem.prox_coupling(tau, y, ax))
        res_x = as_vector(problem.grad_x_phi(u, y)) + (u - ax) / tau
        v = as_vector(problem.prox_g(sigma, ay))
        res_y = as_vector(problem.grad_g(v)) + (v - ay) / sigma
        worst = max(worst, norm(res_x), norm(res_y))
    return worst


def check_prox_small_step(problem, anchor_x=None, y=None, steps=(1e-4, 1e-6)):
    """ratios ||prox_coupling(tau, y, a) - a|| / tau for shrinking tau

    Bounded ratios mean the prox moves the anchor by O(tau).

    :return: one ratio per step
    :rtype: List[float]
    """
    anchor_x = np.ones(problem.dim_x) if anchor_x is None else as_vector(anchor_x, problem.dim_x)
    y = np.ones(problem.dim_y) if y is None else as_vector(y, problem.dim_y)
    return [norm(as_vector(problem.prox_coupling(tau, y, anchor_x)) - anchor_x) / tau for tau in steps]


def saddle_slack_ok(slack, fstar):
    return slack >= -1e-10 * (1.0 + abs(fstar))


def within(lhs, rhs, rtol):
    """lhs <= rhs up to the relative tolerance"""
    return lhs <= rhs + tolerance(lhs, rhs, rtol)
