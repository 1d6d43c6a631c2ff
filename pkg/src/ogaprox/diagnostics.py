# diagnostics over OGAProx traces: gaps, regime rate bounds, certificate quantities, rate fits

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from ogaprox.problem import f_value
from ogaprox.schedules import Accelerated, ConstantUnit, LinearRate
from ogaprox.utils import (SUM_RTOL, ConstraintViolated, DimensionMismatch,
                           InsufficientData, MalformedTrace, Vector, norm,
                           sample_box, sq_norm, tolerance)

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ['k', 'tau_k', 'sigma_k', 'theta_k', 't_k', 'x_norm', 'y_norm',
                 'xhat_norm', 'yhat_norm', 'f_ergodic', 'gap_ergodic', 'value_error',
                 'lower_bound', 'upper_bound', 'cert_slack']
MAX_COORD_DIM = 3  # per-coordinate trace columns up to this dimension
GAP_RTOL = 1e-10


@dataclass
class TraceRow:
    """diagnostic record of iteration k (k >= 1)

    tau_k, sigma_k, theta_k, t_k are the parameters of the step that produced x^k, y^k.
    """
    k: int
    tau_k: float
    sigma_k: float
    theta_k: float
    t_k: float
    x: Vector
    y: Vector
    xhat: Vector
    yhat: Vector
    f_ergodic: float
    gap_ergodic: float = math.nan
    value_error: float = math.nan
    lower_bound: float = math.nan
    upper_bound: float = math.nan
    cert_slack: float = math.nan
    printed_lower: float = math.nan
    cert_ok: bool = True

    @property
    def x_norm(self):
        return norm(self.x)

    @property
    def y_norm(self):
        return norm(self.y)

    @property
    def xhat_norm(self):
        return norm(self.xhat)

    @property
    def yhat_norm(self):
        return norm(self.yhat)


class Certificate(NamedTuple):
    """a_k, b_{k+1}, c_k at one probe, with the two terms the checks compare them to

    ``step_gap`` is f(x^{k+1}, y) - f(x, y^{k+1}) and ``c_floor`` is
    delta ((1/(2 tau_k))||x^{k+1}-x^k||^2 + (1/(2 sigma_k))||y^{k+1}-y^k||^2).
    """
    k: int
    a_k: float
    b_k1: float
    c_k: float
    step_gap: float
    c_floor: float
    probe: Tuple[Vector, Vector]


class RateFit(NamedTuple):
    model: str
    value: float
    residual: float
    slope: float
    intercept: float
    points: int


def minimax_gap(problem, xhat, yhat):
    """f(xhat, y*) - f(x*, yhat)

    :param problem: problem with a known saddle point
    :type problem: SaddleProblem
    :return: gap, nonnegative up to rounding
    :rtype: float
    """
    xstar, ystar, _ = problem.require_saddle()
    return f_value(problem, xhat, ystar) - f_value(problem, xstar, yhat)


def value_error(problem, xhat, yhat):
    """f(xhat, yhat) - f*"""
    _, _, fstar = problem.require_saddle()
    return f_value(problem, xhat, yhat) - fstar


# certificate quantities =========================================================================

def a_value(problem, params, state, probe):
    """a_k(x, y) at iterate state k with the schedule state k"""
    x, y = probe
    q = state.q
    return (sq_norm(x - state.x_cur) / (2.0 * params.tau_k)
            + sq_norm(y - state.y_cur) / (2.0 * params.sigma_k)
            + params.theta_k * float(np.dot(q, state.y_cur - y))
            + params.theta_k * problem.L_yx / (2.0 * params.alpha_k) * sq_norm(state.x_cur - state.x_prev)
            + params.theta_k * problem.L_yy / 2.0 * sq_norm(state.y_cur - state.y_prev))


def b_value(problem, params, state_next, probe):
    """b_{k+1}(x, y) from iterate state k+1 and schedule state k"""
    x, y = probe
    return (sq_norm(x - state_next.x_cur) / (2.0 * params.tau_k)
            + 0.5 * (1.0 / params.sigma_k + problem.nu) * sq_norm(y - state_next.y_cur)
            + float(np.dot(state_next.q, state_next.y_cur - y))
            + problem.L_yx / (2.0 * params.alpha_next) * sq_norm(state_next.x_cur - state_next.x_prev)
            + problem.L_yy / 2.0 * sq_norm(state_next.y_cur - state_next.y_prev))


def c_value(problem, params, state, state_next):
    dx = sq_norm(state_next.x_cur - state.x_cur)
    dy = sq_norm(state_next.y_cur - state.y_cur)
    return (0.5 * (1.0 / params.tau_k - problem.L_yx / params.alpha_next) * dx
            + 0.5 * (1.0 / params.sigma_k - problem.L_yy
                     - params.theta_k * (problem.L_yx * params.alpha_k + problem.L_yy)) * dy)


def certificate(problem, params, state, state_next, probe):
    """evaluate a_k, b_{k+1} and c_k at the probe (x, y)

    :param problem: saddle problem
    :type problem: SaddleProblem
    :param params: schedule state k (constant or accelerated regime)
    :type params: ScheduleState
    :param state: iterate state k
    :type state: IterateState
    :param state_next: iterate state k+1
    :type state_next: IterateState
    :param probe: point (x, y)
    :type probe: Tuple[numpy.ndarray, numpy.ndarray]
    :return: the certificate
    :rtype: Certificate
    """
    x, y = probe
    step_gap = f_value(problem, state_next.x_cur, y) - f_value(problem, x, state_next.y_cur)
    c_floor = params.delta * (sq_norm(state_next.x_cur - state.x_cur) / (2.0 * params.tau_k)
                              + sq_norm(state_next.y_cur - state.y_cur) / (2.0 * params.sigma_k))
    return Certificate(params.k, a_value(problem, params, state, probe),
                       b_value(problem, params, state_next, probe),
                       c_value(problem, params, state, state_next), step_gap, c_floor, probe)


def descent_slack(cert):
    """a_k - b_{k+1} - c_k - (f(x^{k+1}, y) - f(x, y^{k+1})), >= 0 up to rounding"""
    return cert.a_k - cert.b_k1 - cert.c_k - cert.step_gap


def c_lower_slack(cert):
    return cert.c_k - cert.c_floor


def telescoping_slack(cert, cert_next, t_k, t_next):
    """t_k b_{k+1} - t_{k+1} a_{k+1} at the common probe of both certificates"""
    return t_k * cert.b_k1 - t_next * cert_next.a_k


def certificate_scale(cert):
    return abs(cert.a_k) + abs(cert.b_k1) + abs(cert.c_k) + abs(cert.step_gap)


def check_qk_bound(problem, state, params, probe_y):
    """slack of |<q_k, y^k - y>| <= (L_yx/2)(alpha_k||y-y^k||^2 + ||x^k-x^{k-1}||^2/alpha_k)
    + (L_yy/2)(||y-y^k||^2 + ||y^k-y^{k-1}||^2)

    :return: rhs - lhs
    :rtype: float
    """
    if state.k < 1:
        raise ConstraintViolated("the q_k bound is stated for k >= 1")
    dy_probe = sq_norm(probe_y - state.y_cur)
    lhs = abs(float(np.dot(state.q, state.y_cur - probe_y)))
    rhs = (problem.L_yx / 2.0 * (params.alpha_k * dy_probe + sq_norm(state.x_cur - state.x_prev) / params.alpha_k)
           + problem.L_yy / 2.0 * (dy_probe + sq_norm(state.y_cur - state.y_prev)))
    return rhs - lhs


# ergodic inequalities ===========================================================================

def _probe_or_saddle(problem, probe):
    if probe is not None:
        return probe
    xstar, ystar, _ = problem.require_saddle()
    return xstar, ystar


def ergodic_inequalities(problem, trace, k, probe=None):
    """the two Jensen-type bounds around f(xhat_k, yhat_k) - f(x*, y*)

    slack_x = sum_j w_j (f(x^{j+1}, yhat) - f(x*, y^{j+1})) - (f(xhat, yhat) - f*)
    slack_y = (f(xhat, yhat) - f*) - sum_j w_j (f(xhat, y^{j+1}) - f(x^{j+1}, y*))
    with w the normalized weights. ``probe`` replaces the saddle point; both
    slacks are guaranteed nonnegative only at a saddle point.

    :return: (slack_x, slack_y, scale)
    :rtype: Tuple[float, float, float]
    """
    xs, ys = _probe_or_saddle(problem, probe)
    fstar = f_value(problem, xs, ys)
    xhat, yhat = trace.ergodic(k)
    w = trace.weights(k)
    f_hat = f_value(problem, xhat, yhat)
    upper_terms = np.array([f_value(problem, trace.xs[j + 1], yhat) - f_value(problem, xs, trace.ys[j + 1])
                            for j in range(k)])
    lower_terms = np.array([f_value(problem, xhat, trace.ys[j + 1]) - f_value(problem, trace.xs[j + 1], ys)
                            for j in range(k)])
    upper, lower = float(np.dot(w, upper_terms)), float(np.dot(w, lower_terms))
    scale = abs(upper) + abs(lower) + abs(f_hat - fstar)
    return upper - (f_hat - fstar), (f_hat - fstar) - lower, scale


def ergodic_sweep(problem, trace, k_max, probe=None):
    """ergodic_inequalities for every k = 1..k_max

    The terms f(x*, y^{j+1}) and f(x^{j+1}, y*) are evaluated once and reused
    for every k; only the terms at (x^{j+1}, yhat_k) and (xhat_k, y^{j+1})
    are evaluated per k.

    :param k_max: last iteration to check, at most trace.iters
    :type k_max: int
    :return: arrays slack_x, slack_y, scale indexed by k - 1
    :rtype: Tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]
    """
    trace.check_index(k_max, lo=1)
    xs, ys = _probe_or_saddle(problem, probe)
    fstar = f_value(problem, xs, ys)
    at_probe_x = np.array([f_value(problem, xs, trace.ys[j + 1]) for j in range(k_max)])
    at_probe_y = np.array([f_value(problem, trace.xs[j + 1], ys) for j in range(k_max)])
    slack_x, slack_y, scale = np.empty(k_max), np.empty(k_max), np.empty(k_max)
    for k in range(1, k_max + 1):
        xhat, yhat = trace.ergodic(k)
        w = trace.weights(k)
        f_hat = f_value(problem, xhat, yhat) - fstar
        upper_terms = np.array([f_value(problem, trace.xs[j + 1], yhat) for j in range(k)]) - at_probe_x[:k]
        lower_terms = np.array([f_value(problem, xhat, trace.ys[j + 1]) for j in range(k)]) - at_probe_y[:k]
        upper, lower = float(np.dot(w, upper_terms)), float(np.dot(w, lower_terms))
        slack_x[k - 1], slack_y[k - 1] = upper - f_hat, f_hat - lower
        scale[k - 1] = abs(upper) + abs(lower) + abs(f_hat)
    return slack_x, slack_y, scale


def prop_inequality_check(problem, trace, probe, k):
    """rhs - lhs of sum_{i<k} t_i (f(x^{i+1}, y) - f(x, y^{i+1})) <= t_0/(2 tau_0)||x-x^0||^2 + t_0/(2 sigma_0)||y-y^0||^2

    :return: (slack, lhs, rhs)
    :rtype: Tuple[float, float, float]
    """
    x, y = probe
    p0 = trace.params(0)
    lhs = sum(trace.schedule[i].t_k * (f_value(problem, trace.xs[i + 1], y) - f_value(problem, x, trace.ys[i + 1]))
              for i in range(k))
    rhs = p0.t_k * (sq_norm(x - trace.x0) / (2.0 * p0.tau_k) + sq_norm(y - trace.y0) / (2.0 * p0.sigma_k))
    return rhs - lhs, lhs, rhs


def ergodic_gap_bound_check(problem, trace, probe, k):
    """slack of the ergodic gap bound with the iterate terms kept

    sum t_i (f(xhat_k, y) - f(x, yhat_k)) <= t_0/(2 tau_0)||x-x^0||^2 + t_0/(2 sigma_0)||y-y^0||^2
        - t_k/(2 tau_k)||x-x^k||^2 - (t_k/2)(1/sigma_k - theta_k(L_yx alpha_k + L_yy))||y-y^k||^2

    :return: (slack, lhs, rhs)
    :rtype: Tuple[float, float, float]
    """
    x, y = probe
    p0, pk = trace.params(0), trace.params(k)
    xhat, yhat = trace.ergodic(k)
    weight_sum = math.exp(trace.log_weight_sums[k - 1])
    lhs = weight_sum * (f_value(problem, xhat, y) - f_value(problem, x, yhat))
    rhs = (p0.t_k * (sq_norm(x - trace.x0) / (2.0 * p0.tau_k) + sq_norm(y - trace.y0) / (2.0 * p0.sigma_k))
           - pk.t_k / (2.0 * pk.tau_k) * sq_norm(x - trace.xs[k])
           - pk.t_k / 2.0 * (1.0 / pk.sigma_k - pk.theta_k * (problem.L_yx * pk.alpha_k + problem.L_yy))
           * sq_norm(y - trace.ys[k]))
    return rhs - lhs, lhs, rhs


def weighted_sandwich(problem, trace, k):
    """(lower, upper) for sum_{i<k} t_i (f(xhat_k, yhat_k) - f*)

    :rtype: Tuple[float, float]
    """
    xstar, ystar, _ = problem.require_saddle()
    p0 = trace.params(0)
    xhat, yhat = trace.ergodic(k)
    upper = p0.t_k * (sq_norm(xstar - trace.x0) / (2.0 * p0.tau_k) + sq_norm(yhat - trace.y0) / (2.0 * p0.sigma_k))
    lower = -p0.t_k * (sq_norm(xhat - trace.x0) / (2.0 * p0.tau_k) + sq_norm(ystar - trace.y0) / (2.0 * p0.sigma_k))
    return lower, upper


def iterate_bound_check(problem, trace, k):
    """slack of (1/(2 tau_0))||x*-x^0||^2 + (1/(2 sigma_0))||y*-y^0||^2
    >= (t_k/(2 tau_k))||x*-x^k||^2 + (t_k delta/(2 sigma_k))||y*-y^k||^2

    :rtype: float
    """
    xstar, ystar, _ = problem.require_saddle()
    p0, pk = trace.params(0), trace.params(k)
    start = sq_norm(xstar - trace.x0) / (2.0 * p0.tau_k) + sq_norm(ystar - trace.y0) / (2.0 * p0.sigma_k)
    now = (pk.t_k / (2.0 * pk.tau_k) * sq_norm(xstar - trace.xs[k])
           + pk.t_k * pk.delta / (2.0 * pk.sigma_k) * sq_norm(ystar - trace.ys[k]))
    return start - now


# rate bounds ===================================================================================

def _brackets(tau, sigma, x0, y0, xstar, ystar, xhat, yhat):
    up = sq_norm(xstar - x0) / tau + sq_norm(yhat - y0) / sigma
    low = sq_norm(xhat - x0) / tau + sq_norm(ystar - y0) / sigma
    return up, low


def bound_convex_concave(k, tau, sigma, x0, y0, xstar, ystar, xhat, yhat):
    """O(1/k) sandwich of the constant regime

    :return: (lower, upper) around f(xhat_k, yhat_k) - f*
    :rtype: Tuple[float, float]
    """
    if k < 1:
        raise ConstraintViolated(f"bound needs k >= 1, got {k}")
    up, low = _brackets(tau, sigma, x0, y0, xstar, ystar, xhat, yhat)
    return -low / (2.0 * k), up / (2.0 * k)


def bound_convex_strongly_concave(k, nu, tau0, sigma0, x0, y0, xstar, ystar, xhat, yhat):
    """O(1/k^2) sandwich of the accelerated regime, valid for k >= 2

    :return: (lower, upper)
    :rtype: Tuple[float, float]
    """
    if k < 2:
        raise ConstraintViolated(f"accelerated bound holds for k >= 2, got {k}")
    factor = 6.0 / (nu * sigma0 * k * k)
    up, low = _brackets(tau0, sigma0, x0, y0, xstar, ystar, xhat, yhat)
    return -factor * low, factor * up


def bound_linear(k, theta, tau, sigma, x0, y0, xstar, ystar, xhat, yhat):
    """theta^{k-1} sandwich of the linear-rate regime"""
    if k < 1:
        raise ConstraintViolated(f"bound needs k >= 1, got {k}")
    factor = theta ** (k - 1) / 2.0
    up, low = _brackets(tau, sigma, x0, y0, xstar, ystar, xhat, yhat)
    return -factor * low, factor * up


def printed_lower_convex_strongly_concave(k, nu, tau0, sigma0, x0, xhat, y0, ystar):
    # minus sign inside the bracket, kept for the record only
    return -6.0 / (nu * sigma0 * k * k) * (sq_norm(xhat - x0) / tau0 - sq_norm(ystar - y0) / sigma0)


def printed_lower_linear(k, theta, tau, sigma, x0, xhat, y0, ystar):
    return -theta ** (k - 1) / 2.0 * (sq_norm(xhat - x0) / tau - sq_norm(ystar - y0) / sigma)


def regime_bounds(problem, trace, k):
    """(lower, upper, printed_lower) of the rate bound matching the trace regime; nan where none applies"""
    regime = trace.regime
    if problem.saddle is None or not isinstance(regime, (ConstantUnit, Accelerated, LinearRate)):
        return math.nan, math.nan, math.nan
    xstar, ystar, _ = problem.require_saddle()
    xhat, yhat = trace.ergodic(k)
    p0 = trace.schedule[0]
    args = (trace.x0, trace.y0, xstar, ystar, xhat, yhat)
    if isinstance(regime, ConstantUnit):
        lower, upper = bound_convex_concave(k, p0.tau_k, p0.sigma_k, *args)
        return lower, upper, math.nan
    if isinstance(regime, Accelerated):
        if k < 2:
            return math.nan, math.nan, math.nan
        lower, upper = bound_convex_strongly_concave(k, problem.nu, p0.tau_k, p0.sigma_k, *args)
        printed = printed_lower_convex_strongly_concave(k, problem.nu, p0.tau_k, p0.sigma_k,
                                                        trace.x0, xhat, trace.y0, ystar)
        return lower, upper, printed
    lower, upper = bound_linear(k, regime.theta, p0.tau_k, p0.sigma_k, *args)
    printed = printed_lower_linear(k, regime.theta, p0.tau_k, p0.sigma_k, trace.x0, xhat, trace.y0, ystar)
    return lower, upper, printed


def counterexample_closed_form(trace, k):
    """corrected and printed closed forms of f(xhat_k, yhat_k) for a constant-step scalar bilinear run

    corrected: (x^0 - x^k)(y^{k+1} - y^0 - sigma x^k) / (k^2 tau sigma)
    printed:   (x^0 - x^k - tau y^{k+1})(y^{k+1} - y^0 - sigma x^k) / (k^2 tau sigma)

    :return: (corrected, printed)
    :rtype: Tuple[float, float]
    """
    if trace.x0.size != 1 or trace.y0.size != 1:
        raise DimensionMismatch("closed form is stated for the scalar problem")
    if not 1 <= k < trace.iters:
        raise MalformedTrace(f"closed form at k={k} needs y^{k + 1} in the trace")
    p = trace.schedule[0]
    tau, sigma = p.tau_k, p.sigma_k
    x0, y0 = trace.x0[0], trace.y0[0]
    xk, y_next = trace.xs[k][0], trace.ys[k + 1][0]
    second = y_next - y0 - sigma * xk
    denom = k * k * tau * sigma
    return (x0 - xk) * second / denom, (x0 - xk - tau * y_next) * second / denom


# rows and tables ================================================================================

def _row_certificate(problem, trace, k):
    # checks of step k-1 -> k at the saddle probe; telescoping needs step k and is left to the sweeps
    params = trace.schedule[k - 1]
    state, state_next = trace.state(k - 1), trace.state(k)
    probe = _probe_or_saddle(problem, None)
    cert = certificate(problem, params, state, state_next, probe)
    slacks = [descent_slack(cert), c_lower_slack(cert)]
    scale = certificate_scale(cert)
    if k >= 2:
        slacks.append(check_qk_bound(problem, state, params, probe[1]))
    slack = min(slacks)
    return slack, slack >= -SUM_RTOL * (1.0 + scale)


def build_rows(problem, trace, cert_stride=1):
    """one TraceRow per iteration k = 1..K

    :param problem: problem the trace was run on
    :type problem: SaddleProblem
    :param trace: completed or partial trace
    :type trace: Trace
    :param cert_stride: certificate slack every cert_stride rows, 0 disables
    :type cert_stride: int, optional
    :return: rows
    :rtype: List[TraceRow]
    """
    has_saddle = problem.saddle is not None and problem.f_star is not None
    with_cert = cert_stride > 0 and has_saddle and isinstance(trace.regime, (ConstantUnit, Accelerated))
    rows = []
    for k in range(1, trace.iters + 1):
        p = trace.schedule[k - 1]
        xhat, yhat = trace.ergodic(k)
        row = TraceRow(k, p.tau_k, p.sigma_k, p.theta_k, p.t_k, trace.xs[k], trace.ys[k],
                       xhat, yhat, f_value(problem, xhat, yhat))
        if has_saddle:
            row.gap_ergodic = minimax_gap(problem, xhat, yhat)
            row.value_error = row.f_ergodic - problem.f_star
            row.lower_bound, row.upper_bound, row.printed_lower = regime_bounds(problem, trace, k)
        if with_cert and k % cert_stride == 0:
            row.cert_slack, row.cert_ok = _row_certificate(problem, trace, k)
        rows.append(row)
    return rows


def gap_ok(row):
    return math.isnan(row.gap_ergodic) or row.gap_ergodic >= -GAP_RTOL * (1.0 + abs(row.f_ergodic))


def sandwich_ok(row, rtol=SUM_RTOL):
    if math.isnan(row.upper_bound):
        return True
    tol = tolerance(row.lower_bound, row.upper_bound, rtol) + rtol * abs(row.value_error)
    return row.lower_bound - tol <= row.value_error <= row.upper_bound + tol


def printed_lower_ok(row, rtol=SUM_RTOL):
    if math.isnan(row.printed_lower):
        return True
    held = row.value_error >= row.printed_lower - tolerance(row.value_error, row.printed_lower, rtol)
    if not held:
        logger.debug("printed lower bound %.6g exceeds value error %.6g at k=%d",
                     row.printed_lower, row.value_error, row.k)
    return held


def row_violations(rows):
    """number of rows failing gap nonnegativity, the regime sandwich or the certificate checks"""
    return sum(1 for row in rows if not (gap_ok(row) and sandwich_ok(row) and row.cert_ok))


def trace_frame(rows):
    """pandas table with the trace CSV columns

    :param rows: trace rows
    :type rows: List[TraceRow]
    :rtype: pandas.DataFrame
    """
    records = []
    for row in rows:
        rec = {col: getattr(row, col) for col in TRACE_COLUMNS}
        if row.x.size <= MAX_COORD_DIM and row.y.size <= MAX_COORD_DIM:
            rec.update({f'x_{i}': v for i, v in enumerate(row.x)})
            rec.update({f'y_{i}': v for i, v in enumerate(row.y)})
        records.append(rec)
    frame = pd.DataFrame.from_records(records)
    if frame.empty:
        frame = pd.DataFrame(columns=TRACE_COLUMNS)
    return frame


def read_trace(path):
    """load a trace CSV, checking the required columns"""
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as err:
        raise MalformedTrace(f"cannot read trace {path}: {err}") from err
    missing = [col for col in TRACE_COLUMNS if col not in frame.columns]
    if missing:
        raise MalformedTrace(f"trace {path} lacks columns {missing}")
    return frame


# rate fitting ==================================================================================

def fit_rate(frame, column='value_error', window=None, model='power'):
    """least-squares rate of |column| against k

    power: slope of log|e| vs log k. geometric: e^{slope} of log|e| vs k.
    Zeros and non-finite values are dropped; the default window skips the
    first 10% of the iterations.

    :param frame: trace table with a k column
    :type frame: pandas.DataFrame
    :param column: error column to fit
    :type column: str
    :param window: inclusive [k_lo, k_hi], defaults to None
    :type window: Tuple[int, int], optional
    :param model: 'power' or 'geometric'
    :type model: str
    :return: fitted exponent or ratio with the RMS residual of the log fit
    :rtype: RateFit
    """
    if model not in ('power', 'geometric'):
        raise ConstraintViolated(f"unknown rate model {model!r}")
    if column not in frame.columns or 'k' not in frame.columns:
        raise MalformedTrace(f"trace has no column {column!r}")
    k = frame['k'].to_numpy(dtype=np.float64)
    err = np.abs(frame[column].to_numpy(dtype=np.float64))
    if window is None:
        k_max = k.max() if k.size else 0.0
        window = (math.floor(0.1 * k_max) + 1, k_max)
    mask = (k >= window[0]) & (k <= window[1]) & np.isfinite(err) & (err > 0)
    if mask.sum() < 10:
        raise InsufficientData(f"{int(mask.sum())} usable points in window {window}, need 10")
    xs = np.log(k[mask]) if model == 'power' else k[mask]
    ys = np.log(err[mask])
    fit = stats.linregress(xs, ys)
    residual = float(np.sqrt(np.mean((ys - (fit.intercept + fit.slope * xs)) ** 2)))
    value = fit.slope if model == 'power' else math.exp(fit.slope)
    return RateFit(model, float(value), residual, float(fit.slope), float(fit.intercept), int(mask.sum()))


def default_model(regime):
    return 'geometric' if isinstance(regime, LinearRate) else 'power'


def sample_points(rng, count, dim_x, dim_y, radius=10.0):
    """seeded probe points in the box [-radius, radius]"""
    xs = sample_box(rng, count, dim_x, radius)
    ys = sample_box(rng, count, dim_y, radius)
    return list(zip(xs, ys))


def first_violation(slacks, scales, rtol=SUM_RTOL) -> Optional[int]:
    for i, (slack, scale) in enumerate(zip(slacks, scales)):
        if slack < -rtol * (1.0 + scale):
            return i
    return None
