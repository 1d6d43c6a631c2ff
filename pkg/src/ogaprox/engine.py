# OGAProx iteration: optimistic proximal gradient ascent in y, proximal point step in x
#
# y^{k+1} = Prox_{sigma_k g}(y^k + sigma_k[(1+theta_k) grad_y Phi(x^k,y^k) - theta_k grad_y Phi(x^{k-1},y^{k-1})])
# x^{k+1} = argmin_x Phi(x, y^{k+1}) + 1/(2 tau_k)||x - x^k||^2

import logging
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np
from scipy.special import logsumexp
from tqdm import tqdm

from ogaprox.schedules import (Adversarial, ScheduleState, adversarial_state,
                               describe, schedule_states, validate_epsilon,
                               validate_regime)
from ogaprox.utils import (ConstraintViolated, DimensionMismatch,
                           MalformedTrace, OGAProxError, OracleDomainError,
                           Vector, as_vector, require_finite)

logger = logging.getLogger(__name__)


class IterateState(NamedTuple):
    """(x^{k-1}, x^k, y^{k-1}, y^k) plus the cached dual gradients at both points"""
    x_prev: Vector
    x_cur: Vector
    y_prev: Vector
    y_cur: Vector
    grad_prev: Vector
    grad_cur: Vector
    k: int = 0

    @property
    def q(self):
        """q_k = grad_y Phi(x^k, y^k) - grad_y Phi(x^{k-1}, y^{k-1})"""
        return self.grad_cur - self.grad_prev


def _oracle_vector(value, dim, what):
    # float64 arrays of the right shape are used as returned
    if type(value) is not np.ndarray or value.dtype != np.float64 or value.shape != (dim,):
        value = as_vector(value, dim, what)
    return require_finite(value, what)


def _grad(problem, x, y):
    return _oracle_vector(problem.grad_y_phi(x, y), problem.dim_y, "dual gradient")


def initial_state(problem, x0, y0):
    """state at k = 0 with (x^{-1}, y^{-1}) := (x^0, y^0), so q_0 = 0

    :param problem: saddle problem
    :type problem: SaddleProblem
    :param x0: primal start
    :type x0: numpy.ndarray
    :param y0: dual start
    :type y0: numpy.ndarray
    :return: initial iterate state
    :rtype: IterateState
    """
    x0 = require_finite(as_vector(x0, problem.dim_x, "x0"), "x0")
    y0 = require_finite(as_vector(y0, problem.dim_y, "y0"), "y0")
    if not problem.contains(x0, y0):
        raise OracleDomainError(f"start point ({x0}, {y0}) outside the coupling domain")
    grad = _grad(problem, x0, y0)
    return IterateState(x0, x0.copy(), y0, y0.copy(), grad, grad.copy(), 0)


def _dual_step(problem, state, sigma, theta):
    anchor = state.y_cur + (sigma * (1.0 + theta)) * state.grad_cur - (sigma * theta) * state.grad_prev
    y_next = problem.prox_g(sigma, anchor)
    return _oracle_vector(y_next, problem.dim_y, f"y^{state.k + 1}")


def _primal_step(problem, state, y_next, tau):
    if tau < 0:
        raise ConstraintViolated(f"tau_{state.k} = {tau} is negative")
    if tau == 0:
        return state.x_cur.copy()
    x_next = problem.prox_coupling(tau, y_next, state.x_cur)
    return _oracle_vector(x_next, problem.dim_x, f"x^{state.k + 1}")


def _advance(problem, state, x_next, y_next):
    if not problem.contains(x_next, y_next):
        raise OracleDomainError(f"iterate {state.k + 1} left the coupling domain")
    return IterateState(state.x_cur, x_next, state.y_cur, y_next,
                        state.grad_cur, _grad(problem, x_next, y_next), state.k + 1)


def _step(problem, state, params):
    y_next = _dual_step(problem, state, params.sigma_k, params.theta_k)
    x_next = _primal_step(problem, state, y_next, params.tau_k)
    return _advance(problem, state, x_next, y_next)


def ogaprox_step(problem, state, params):
    """one OGAProx step k -> k+1 with fully formed parameters

    Evaluates grad_y Phi once, at the new iterate; the two gradients the dual
    update needs come from the cache in ``state``.

    :param problem: saddle problem
    :type problem: SaddleProblem
    :param state: iterate state k
    :type state: IterateState
    :param params: schedule state k
    :type params: ScheduleState
    :return: iterate state k+1
    :rtype: IterateState
    """
    if params.k != state.k:
        raise ConstraintViolated(f"schedule index {params.k} does not match iterate index {state.k}")
    return _step(problem, state, params)


def _adversarial_step(problem, state, epsilon):
    if problem.dim_x != 1 or problem.dim_y != 1:
        raise DimensionMismatch("the adversarial schedule is defined for scalar problems only")
    y_next = _dual_step(problem, state, epsilon, epsilon)
    params = adversarial_state(epsilon, state.k, y_next[0])
    if params.tau_k < 0:
        raise OracleDomainError(f"y^{state.k + 1} = {y_next[0]:.6g} is negative; "
                                f"the adversarial tau_{state.k} needs y^{state.k + 1} >= 0")
    x_next = _primal_step(problem, state, y_next, params.tau_k)
    return _advance(problem, state, x_next, y_next), params


def ogaprox_step_adversarial(problem, state, epsilon):
    """step with sigma_k = theta_k = epsilon and tau_k chosen after y^{k+1} is known

    :param epsilon: schedule constant in (0, 3/pi^2)
    :type epsilon: float
    :return: iterate state k+1
    :rtype: IterateState
    """
    validate_epsilon(epsilon)
    return _adversarial_step(problem, state, epsilon)[0]


class ErgodicAccumulator(NamedTuple):
    """streaming weighted means of x^1..x^k, y^1..y^k

    The weight sum is kept as S_rel = sum_i t_i / t_last together with
    log t_last, so geometrically growing weights never overflow.
    """
    mean_x: Optional[Vector] = None
    mean_y: Optional[Vector] = None
    s_rel: float = 0.0
    log_t_last: float = 0.0
    count: int = 0

    @property
    def log_weight_sum(self):
        return math.log(self.s_rel) + self.log_t_last if self.count else -math.inf

    @property
    def weight_sum(self):
        return math.exp(self.log_weight_sum) if self.log_weight_sum < 690 else math.inf


def _fold(acc, log_ratio, x_next, y_next):
    # log_ratio is log t_0 for the first point, log(t_k / t_{k-1}) afterwards
    if acc.count == 0:
        return ErgodicAccumulator(x_next.copy(), y_next.copy(), 1.0, log_ratio, 1)
    s_rel = acc.s_rel * math.exp(-log_ratio) + 1.0
    return ErgodicAccumulator(acc.mean_x + (x_next - acc.mean_x) / s_rel,
                              acc.mean_y + (y_next - acc.mean_y) / s_rel,
                              s_rel, acc.log_t_last + log_ratio, acc.count + 1)


def ergodic_update(acc, weight, x_next, y_next, is_ratio=False):
    """fold one weighted point into the running means

    :param acc: current accumulator
    :type acc: ErgodicAccumulator
    :param weight: t_k, or t_k / t_{k-1} when ``is_ratio`` (t_0 itself for the first point)
    :type weight: float
    :param is_ratio: interpret weight as a ratio to the previous weight
    :type is_ratio: bool, optional
    :return: updated accumulator
    :rtype: ErgodicAccumulator
    """
    if not weight > 0:
        raise ConstraintViolated(f"ergodic weight must be positive, got {weight}")
    x_next = np.asarray(x_next, dtype=np.float64)
    y_next = np.asarray(y_next, dtype=np.float64)
    log_ratio = math.log(weight)
    if acc.count and not is_ratio:
        log_ratio -= acc.log_t_last
    return _fold(acc, log_ratio, x_next, y_next)


class StepRecord(NamedTuple):
    k: int
    params: ScheduleState
    state: IterateState
    acc: ErgodicAccumulator


@dataclass
class Trace:
    """stored run: iterates x^0..x^K, y^0..y^K, cached gradients, schedule and ergodic means

    ``xhat[k-1]`` is x_hat_k (k >= 1), ``log_weight_sums[k-1]`` is log sum_{i<k} t_i.
    """
    label: str
    regime: object
    x0: Vector
    y0: Vector
    delta: float = math.nan
    xs: List[Vector] = field(default_factory=list)
    ys: List[Vector] = field(default_factory=list)
    grads: List[Vector] = field(default_factory=list)
    schedule: List[ScheduleState] = field(default_factory=list)
    xhat: List[Vector] = field(default_factory=list)
    yhat: List[Vector] = field(default_factory=list)
    log_weight_sums: List[float] = field(default_factory=list)
    next_params: Optional[ScheduleState] = None
    stop_reason: str = ""
    error: Optional[OGAProxError] = None

    @property
    def iters(self):
        return len(self.schedule)

    def append(self, params, state, acc):
        self.schedule.append(params)
        self.xs.append(state.x_cur)
        self.ys.append(state.y_cur)
        self.grads.append(state.grad_cur)
        self.xhat.append(acc.mean_x)
        self.yhat.append(acc.mean_y)
        self.log_weight_sums.append(acc.log_weight_sum)

    def check_index(self, k, lo=0):
        if not lo <= k <= self.iters:
            raise MalformedTrace(f"index {k} outside [{lo}, {self.iters}] of trace {self.label!r}")

    def state(self, k):
        """IterateState k rebuilt from the stored iterates"""
        self.check_index(k)
        j = max(k - 1, 0)
        return IterateState(self.xs[j], self.xs[k], self.ys[j], self.ys[k],
                            self.grads[j], self.grads[k], k)

    def params(self, k):
        """schedule state k; k = iters needs the look-ahead state of a precomputable schedule"""
        self.check_index(k)
        if k < self.iters:
            return self.schedule[k]
        if self.next_params is None:
            raise MalformedTrace(f"trace {self.label!r} has no schedule state {k}")
        return self.next_params

    def ergodic(self, k):
        """(x_hat_k, y_hat_k) for k >= 1"""
        self.check_index(k, lo=1)
        return self.xhat[k - 1], self.yhat[k - 1]

    def weights(self, k):
        """normalized weights t_j / sum_{i<k} t_i for j = 0..k-1"""
        self.check_index(k, lo=1)
        log_t = np.array([p.log_t for p in self.schedule[:k]])
        return np.exp(log_t - logsumexp(log_t))

    def raise_for_error(self):
        if self.error is not None:
            raise self.error


def run(problem, regime, x0, y0, max_iters, observers=(), progress=False):
    """drive OGAProx for max_iters steps and collect the trace

    Oracle and numeric errors stop the loop; the partial trace is returned
    with ``stop_reason == "error"`` and the exception in ``trace.error``.

    :param problem: saddle problem
    :type problem: SaddleProblem
    :param regime: step-size regime
    :type regime: RegimeSpec
    :param x0: primal start
    :type x0: numpy.ndarray
    :param y0: dual start
    :type y0: numpy.ndarray
    :param max_iters: number of steps, at least 1
    :type max_iters: int
    :param observers: callables on each StepRecord; returning True stops the run
    :type observers: Sequence[Callable]
    :param progress: show a tqdm progress bar
    :type progress: bool, optional
    :return: the trace
    :rtype: Trace
    """
    if max_iters < 1:
        raise ConstraintViolated(f"max_iters must be >= 1, got {max_iters}")
    x0 = as_vector(x0, problem.dim_x, "x0")
    y0 = as_vector(y0, problem.dim_y, "y0")
    delta = validate_regime(regime, problem)
    trace = Trace(problem.label, regime, x0, y0, delta=delta)
    logger.info("run %s with %s for %d iterations", problem.label, describe(regime), max_iters)
    adversarial = isinstance(regime, Adversarial)
    observers = list(observers)
    try:
        state = initial_state(problem, x0, y0)
        trace.xs.append(state.x_cur)
        trace.ys.append(state.y_cur)
        trace.grads.append(state.grad_cur)
        params_iter = None if adversarial else schedule_states(regime, problem)
        acc = ErgodicAccumulator()
        trace.stop_reason = "max_iters"
        for _ in tqdm(range(max_iters), disable=not progress, desc=problem.label):
            if adversarial:
                state, params = _adversarial_step(problem, state, regime.epsilon)
            else:
                params = next(params_iter)
                state = _step(problem, state, params)
            acc = _fold(acc, math.log(params.t_ratio), state.x_cur, state.y_cur)
            trace.append(params, state, acc)
            if observers:
                record = StepRecord(state.k, params, state, acc)
                if any([observer(record) for observer in observers]):
                    trace.stop_reason = "observer"
                    logger.warning("run %s stopped by observer at k=%d", problem.label, state.k)
                    break
        if params_iter is not None:
            trace.next_params = next(params_iter)
    except OGAProxError as err:
        trace.error = err
        trace.stop_reason = "error"
        logger.warning("run %s aborted after %d steps: %s", problem.label, trace.iters, err)
    logger.info("run %s finished: %d steps, stop reason %s", problem.label, trace.iters, trace.stop_reason)
    return trace
