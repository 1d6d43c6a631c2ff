# parameter sequences (sigma_k, tau_k, theta_k, t_k, alpha_k) for the three step-size regimes
# and the adversarial schedule of the counterexample

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from ogaprox.utils import (WEIGHT_CAP, ZERO_GUARD, ConstraintViolated,
                           EpsilonOutOfRange)

logger = logging.getLogger(__name__)

SIGMA0_CAP_NUM = 9.0 + 3.0 * math.sqrt(13.0)  # accelerated regime: sigma0 <= SIGMA0_CAP_NUM / (2 nu)
EPSILON_MAX = 3.0 / math.pi ** 2


class ScheduleState(NamedTuple):
    """parameters of step k

    ``t_k`` is ``inf`` once the weight passes WEIGHT_CAP; ``log_t`` and
    ``t_ratio`` = t_k / t_{k-1} stay finite and are what the ergodic
    accumulator consumes.
    """
    k: int
    sigma_k: float
    tau_k: float
    theta_k: float
    t_k: float
    alpha_k: float
    alpha_next: float
    delta: float
    log_t: float = 0.0
    t_ratio: float = 1.0
    c_alpha: Optional[float] = None


@dataclass(frozen=True)
class ConstantUnit:
    tau: float
    sigma: float
    c_alpha: Optional[float] = None
    name = "constant"


@dataclass(frozen=True)
class Accelerated:
    tau0: float
    sigma0: float
    c_alpha: Optional[float] = None
    name = "accelerated"


@dataclass(frozen=True)
class LinearRate:
    theta: float
    alpha: float = 1.0
    name = "linear"


@dataclass(frozen=True)
class Adversarial:
    epsilon: float
    name = "adversarial"


RegimeSpec = Union[ConstantUnit, Accelerated, LinearRate, Adversarial]


def _weight(log_t):
    return math.inf if log_t > math.log(WEIGHT_CAP) else math.exp(log_t)


def default_c_alpha(L_yx):
    return 2.0 * L_yx if L_yx > 0 else 1.0


def default_constant_steps(c_alpha, L_yx, L_yy):
    """sigma = tau = s with (c_alpha L_yx s + 2 L_yy) s = 0.81

    For L_yy = 0 this is s = 0.9 / sqrt(c_alpha L_yx). Returns 1 when both
    constants vanish.

    :return: (tau, sigma)
    :rtype: Tuple[float, float]
    """
    a, b = c_alpha * L_yx, 2.0 * L_yy
    if a <= 0 and b <= 0:
        return 1.0, 1.0
    if a <= 0:
        s = 0.81 / b
    else:
        s = (-b + math.sqrt(b * b + 4.0 * a * 0.81)) / (2.0 * a)
    return s, s


def _check_c_alpha(c_alpha, L_yx):
    if not c_alpha > L_yx:
        raise ConstraintViolated(f"c_alpha={c_alpha} must exceed L_yx={L_yx}")


def validate_constant_unit(tau, sigma, c_alpha, L_yx, L_yy):
    """check the O(1/k) step-size condition and return delta

    :param tau: primal step, positive
    :type tau: float
    :param sigma: dual step, positive
    :type sigma: float
    :param c_alpha: auxiliary constant, must exceed L_yx
    :type c_alpha: float
    :return: delta = min{1 - L_yx/c_alpha, 1 - (c_alpha L_yx tau + 2 L_yy) sigma}
    :rtype: float
    """
    if not (tau > 0 and sigma > 0):
        raise ConstraintViolated(f"steps must be positive, got tau={tau}, sigma={sigma}")
    _check_c_alpha(c_alpha, L_yx)
    coupling = (c_alpha * L_yx * tau + 2.0 * L_yy) * sigma
    if coupling >= 1.0:
        raise ConstraintViolated(
            f"(c_alpha L_yx tau + 2 L_yy) sigma = {coupling:.6g} must be < 1")
    return min(1.0 - L_yx / c_alpha, 1.0 - coupling)


def validate_accelerated(tau0, sigma0, c_alpha, L_yx, L_yy, nu):
    """same condition as the constant regime plus sigma0 <= (9 + 3 sqrt(13)) / (2 nu)

    :return: delta
    :rtype: float
    """
    if not nu > 0:
        raise ConstraintViolated(f"accelerated regime needs nu > 0, got {nu}")
    cap = SIGMA0_CAP_NUM / (2.0 * nu)
    if sigma0 > cap:
        raise ConstraintViolated(f"sigma0={sigma0} exceeds (9+3*sqrt(13))/(2 nu) = {cap:.6g}")
    return validate_constant_unit(tau0, sigma0, c_alpha, L_yx, L_yy)


def theta_tilde(alpha, mu, nu, L_yx, L_yy):
    """lower end of the admissible theta interval in the linear-rate regime

    :return: max{L_yx/(alpha mu + L_yx), (alpha L_yx + 2 L_yy)/(nu + alpha L_yx + 2 L_yy)}
    :rtype: float
    """
    if not (alpha > 0 and mu > 0 and nu > 0):
        raise ConstraintViolated(f"theta_tilde needs alpha, mu, nu > 0, got {alpha}, {mu}, {nu}")
    dual = alpha * L_yx + 2.0 * L_yy
    return max(L_yx / (alpha * mu + L_yx), dual / (nu + dual))


def linear_rate_params(theta, mu, nu, theta_min=0.0):
    """step sizes solving 1 + nu sigma = 1/theta and 1 + mu tau = 1/theta

    :param theta: rate, in (theta_min, 1)
    :type theta: float
    :param theta_min: lower admissible end, usually theta_tilde
    :type theta_min: float, optional
    :return: (sigma, tau)
    :rtype: Tuple[float, float]
    """
    if not (mu > 0 and nu > 0):
        raise ConstraintViolated(f"linear-rate regime needs mu, nu > 0, got mu={mu}, nu={nu}")
    if not theta_min < theta < 1.0:
        raise ConstraintViolated(f"theta={theta} must lie in ({theta_min:.6g}, 1)")
    return (1.0 - theta) / (nu * theta), (1.0 - theta) / (mu * theta)


def sigma_tilde(sigma, theta, alpha, L_yx, L_yy):
    """sigma / (1 - theta sigma (alpha L_yx + L_yy)), the effective dual step of the linear regime

    :return: sigma_tilde, positive
    :rtype: float
    """
    denom = 1.0 - theta * sigma * (alpha * L_yx + L_yy)
    if not denom > 0:
        raise ConstraintViolated(f"1 - theta sigma (alpha L_yx + L_yy) = {denom:.6g} must be > 0")
    return sigma / denom


def validate_linear_rate(theta, alpha, mu, nu, L_yx, L_yy):
    """check theta in (theta_tilde, 1) and the step conditions of the linear regime

    :return: delta = min{1 - tau L_yx/alpha, 1 - sigma L_yy - theta sigma (alpha L_yx + L_yy)}
    :rtype: float
    """
    tt = theta_tilde(alpha, mu, nu, L_yx, L_yy)
    sigma, tau = linear_rate_params(theta, mu, nu, theta_min=tt)
    st = sigma_tilde(sigma, theta, alpha, L_yx, L_yy)
    if L_yx / alpha > 1.0 / tau or L_yy > 1.0 / st:
        raise ConstraintViolated(f"step sizes tau={tau:.6g}, sigma={sigma:.6g} too large for theta={theta}")
    delta = min(1.0 - tau * L_yx / alpha, sigma / st - sigma * L_yy)
    if not 0 < delta <= 1:
        raise ConstraintViolated(f"delta={delta:.6g} outside (0, 1]")
    return delta


def validate_epsilon(epsilon):
    if not 0 < epsilon < EPSILON_MAX:
        raise EpsilonOutOfRange(f"epsilon={epsilon} must lie in (0, 3/pi^2) = (0, {EPSILON_MAX:.6f})")
    return epsilon


def resolve_c_alpha(regime, L_yx):
    return default_c_alpha(L_yx) if regime.c_alpha is None else regime.c_alpha


def validate_regime(regime, problem):
    """dispatch to the validator of the regime; returns delta (nan for the adversarial schedule)"""
    if isinstance(regime, ConstantUnit):
        c_alpha = resolve_c_alpha(regime, problem.L_yx)
        return validate_constant_unit(regime.tau, regime.sigma, c_alpha, problem.L_yx, problem.L_yy)
    if isinstance(regime, Accelerated):
        c_alpha = resolve_c_alpha(regime, problem.L_yx)
        return validate_accelerated(regime.tau0, regime.sigma0, c_alpha,
                                    problem.L_yx, problem.L_yy, problem.nu)
    if isinstance(regime, LinearRate):
        return validate_linear_rate(regime.theta, regime.alpha, problem.mu, problem.nu,
                                    problem.L_yx, problem.L_yy)
    if isinstance(regime, Adversarial):
        validate_epsilon(regime.epsilon)
        return math.nan
    raise ConstraintViolated(f"unknown regime {regime!r}")


def advance_accelerated(state, nu):
    """one step of theta_{k+1} = 1/sqrt(1 + nu sigma_k)

    :param state: accelerated state k
    :type state: ScheduleState
    :param nu: strong concavity modulus of the dual part
    :type nu: float
    :return: state k+1
    :rtype: ScheduleState
    """
    theta = 1.0 / math.sqrt(1.0 + nu * state.sigma_k)
    tau = state.tau_k / theta
    c_alpha = state.c_alpha if state.c_alpha is not None else state.alpha_next / state.tau_k
    log_t = state.log_t - math.log(theta)
    t_next = state.t_k / theta
    if t_next > WEIGHT_CAP:
        t_next = math.inf
    return state._replace(k=state.k + 1, sigma_k=theta * state.sigma_k, tau_k=tau,
                          theta_k=theta, t_k=t_next, alpha_k=state.alpha_next,
                          alpha_next=c_alpha * tau, log_t=log_t, t_ratio=1.0 / theta,
                          c_alpha=c_alpha)


def adversarial_tau(epsilon, k, y_next):
    """tau_k = epsilon / (y^{k+1} (k+1)^2), or 0 when y^{k+1} is numerically zero

    :param epsilon: schedule constant
    :type epsilon: float
    :param k: iteration index
    :type k: int
    :param y_next: scalar dual iterate y^{k+1}
    :type y_next: float
    :rtype: float
    """
    y_next = float(y_next)
    if abs(y_next) <= ZERO_GUARD:
        return 0.0
    return epsilon / (y_next * (k + 1) ** 2)


def adversarial_state(epsilon, k, y_next):
    return ScheduleState(k=k, sigma_k=epsilon, tau_k=adversarial_tau(epsilon, k, y_next),
                         theta_k=epsilon, t_k=1.0, alpha_k=math.nan, alpha_next=math.nan,
                         delta=math.nan)


def schedule_states(regime, problem):
    """infinite generator of ScheduleState k = 0, 1, 2, ...

    The adversarial schedule is not covered: its tau_k depends on y^{k+1},
    so the engine builds it step by step.
    """
    delta = validate_regime(regime, problem)
    if isinstance(regime, ConstantUnit):
        c_alpha = resolve_c_alpha(regime, problem.L_yx)
        alpha = c_alpha * regime.tau
        k = 0
        while True:
            yield ScheduleState(k, regime.sigma, regime.tau, 1.0, 1.0, alpha, alpha, delta, 0.0, 1.0, c_alpha)
            k += 1
    elif isinstance(regime, Accelerated):
        c_alpha = resolve_c_alpha(regime, problem.L_yx)
        alpha = c_alpha * regime.tau0
        state = ScheduleState(0, regime.sigma0, regime.tau0, 1.0, 1.0, alpha, alpha, delta,
                              c_alpha=c_alpha)
        while True:
            yield state
            state = advance_accelerated(state, problem.nu)
    elif isinstance(regime, LinearRate):
        sigma, tau = linear_rate_params(regime.theta, problem.mu, problem.nu)
        step = -math.log(regime.theta)
        k = 0
        while True:
            log_t = k * step
            yield ScheduleState(k, sigma, tau, regime.theta, _weight(log_t), regime.alpha,
                                regime.alpha, delta, log_t=log_t,
                                t_ratio=1.0 if k == 0 else 1.0 / regime.theta)
            k += 1
    else:
        raise ConstraintViolated(f"{regime!r} has no precomputable schedule")


def step_inequalities(state, L_yx, L_yy):
    """slacks of (1-delta)/tau_k >= L_yx/alpha_{k+1} and
    (1-delta)/sigma_k >= L_yx alpha_k theta_k + L_yy (1 + theta_k)

    :rtype: Tuple[float, float]
    """
    first = (1.0 - state.delta) / state.tau_k - L_yx / state.alpha_next
    second = (1.0 - state.delta) / state.sigma_k - (L_yx * state.alpha_k * state.theta_k
                                                     + L_yy * (1.0 + state.theta_k))
    return first, second


def describe(regime):
    fields = ", ".join(f"{k}={v:g}" for k, v in vars(regime).items() if v is not None)
    return f"{regime.name}({fields})"
