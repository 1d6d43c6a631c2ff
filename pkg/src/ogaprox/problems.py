# built-in problem instances with closed-form prox maps and known saddle points

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ogaprox.problem import SaddleProblem
from ogaprox.prox import prox_bilinear_coupling, prox_quadratic, prox_zero
from ogaprox.schedules import (Accelerated, Adversarial, ConstantUnit,
                               LinearRate, RegimeSpec, validate_epsilon)
from ogaprox.utils import ConstraintViolated, as_vector


def _quadratic_problem(A, mu, nu, label):
    # Phi(x, y) = (mu/2)||x||^2 + <Ax, y>,  g(y) = (nu/2)||y||^2
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    n2, n1 = A.shape
    L_yx = float(np.linalg.norm(A, 2))

    def phi_value(x, y):
        return 0.5 * mu * float(np.dot(x, x)) + float(np.dot(A @ x, y))

    def grad_y_phi(x, y):
        return A @ np.asarray(x, dtype=np.float64)

    def grad_x_phi(x, y):
        return mu * np.asarray(x, dtype=np.float64) + A.T @ np.asarray(y, dtype=np.float64)

    def g_value(y):
        return 0.5 * nu * float(np.dot(y, y))

    def grad_g(y):
        return nu * np.asarray(y, dtype=np.float64)

    prox_g = prox_quadratic(nu) if nu > 0 else prox_zero
    return SaddleProblem(
        phi_value=phi_value, grad_y_phi=grad_y_phi,
        prox_coupling=prox_bilinear_coupling(A, mu),
        g_value=g_value, prox_g=prox_g, dim_x=n1, dim_y=n2,
        L_yx=L_yx, L_yy=0.0, mu=mu, nu=nu,
        saddle=(np.zeros(n1), np.zeros(n2)), f_star=0.0, label=label,
        grad_x_phi=grad_x_phi, grad_g=grad_g)


def bilinear(n=1, A=None):
    """f(x, y) = <Ax, y>, g = 0; A defaults to the n x n identity

    :param n: dimension used when A is not given
    :type n: int, optional
    :param A: coupling matrix of shape (n2, n1)
    :type A: numpy.ndarray, optional
    :return: problem with L_yx = ||A||_2 and saddle (0, 0)
    :rtype: SaddleProblem
    """
    if A is None:
        if n < 1:
            raise ConstraintViolated(f"dimension must be >= 1, got {n}")
        A = np.eye(n)
    return _quadratic_problem(A, 0.0, 0.0, "bilinear")


def convex_strongly_concave(nu=1.0):
    """f(x, y) = xy - (nu/2) y^2"""
    if not nu > 0:
        raise ConstraintViolated(f"nu must be positive, got {nu}")
    return _quadratic_problem([[1.0]], 0.0, nu, "csc")


def strongly_convex_strongly_concave(mu=1.0, nu=1.0):
    """f(x, y) = (mu/2) x^2 + xy - (nu/2) y^2"""
    if not (mu > 0 and nu > 0):
        raise ConstraintViolated(f"mu and nu must be positive, got mu={mu}, nu={nu}")
    return _quadratic_problem([[1.0]], mu, nu, "scsc")


def counterexample_setup(epsilon=0.1):
    """scalar f(x, y) = xy with the adversarial schedule, started at (1, 1)

    :param epsilon: schedule constant in (0, 3/pi^2)
    :type epsilon: float
    :return: (problem, regime, x0, y0)
    :rtype: Tuple[SaddleProblem, Adversarial, numpy.ndarray, numpy.ndarray]
    """
    validate_epsilon(epsilon)
    problem = _quadratic_problem([[1.0]], 0.0, 0.0, "counterexample")
    return problem, Adversarial(epsilon), np.ones(1), np.ones(1)


@dataclass(frozen=True)
class ProblemCatalogEntry:
    label: str
    builder: Callable[..., SaddleProblem]
    regime: RegimeSpec
    notes: str
    start: tuple = (1.0, 1.0)

    def build(self, **params):
        return self.builder(**params)

    def start_point(self, problem):
        x0 = as_vector(np.full(problem.dim_x, self.start[0]), problem.dim_x, "x0")
        y0 = as_vector(np.full(problem.dim_y, self.start[1]), problem.dim_y, "y0")
        return x0, y0


CATALOG = {
    "bilinear": ProblemCatalogEntry(
        "bilinear", bilinear, ConstantUnit(0.2, 0.2, 2.0),
        "f(x,y) = <Ax,y>; constant steps, O(1/k) ergodic rate"),
    "csc": ProblemCatalogEntry(
        "csc", convex_strongly_concave, Accelerated(0.5, 0.5, 2.0),
        "f(x,y) = xy - (nu/2)y^2; accelerated steps, O(1/k^2) ergodic rate"),
    "scsc": ProblemCatalogEntry(
        "scsc", strongly_convex_strongly_concave, LinearRate(0.6, 1.0),
        "f(x,y) = (mu/2)x^2 + xy - (nu/2)y^2; linear rate theta"),
    "counterexample": ProblemCatalogEntry(
        "counterexample", lambda epsilon=0.1: counterexample_setup(epsilon)[0], Adversarial(0.1),
        "f(x,y) = xy with sigma_k = theta_k = eps; gap -> 0 but f(xhat, yhat) stays > (1-eps^2)/2"),
}


def get_entry(label):
    try:
        return CATALOG[label]
    except KeyError:
        raise ConstraintViolated(f"unknown problem {label!r}, choose from {sorted(CATALOG)}") from None
