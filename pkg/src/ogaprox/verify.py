# invariant suites behind `ogaprox verify`: each suite runs the solver on the catalog
# problems and reports one CheckResult per property

import dataclasses
import logging
import math
from typing import NamedTuple

import numpy as np
import pandas as pd

from ogaprox import diagnostics as dg
from ogaprox import engine, schedules
from ogaprox.problem import (check_lipschitz, check_prox_optimality,
                             check_prox_small_step, check_saddle, f_value,
                             saddle_slack_ok, within)
from ogaprox.problems import (CATALOG, bilinear, convex_strongly_concave,
                              counterexample_setup,
                              strongly_convex_strongly_concave)
from ogaprox.prox import (check_firm_nonexpansive, prox_bilinear_coupling,
                          prox_quadratic, prox_zero)
from ogaprox.utils import (STEP_RTOL, SUM_RTOL, ConstraintViolated,
                           OGAProxError, sample_box)

logger = logging.getLogger(__name__)

COUNTEREXAMPLE_ITERS = 10_000
CERT_ITERS = 500
CERT_PROBES = 20
ERGODIC_ITERS = 1000
SANDWICH_ITERS = 10_000
LINEAR_ITERS = 300
RATE_ITERS = 100_000


class CheckResult(NamedTuple):
    suite: str
    check: str
    passed: bool
    detail: str


def _ok(suite, check, passed, detail=""):
    if not passed:
        logger.warning("%s/%s failed: %s", suite, check, detail)
    return CheckResult(suite, check, bool(passed), detail)


def _worst(slacks, scales):
    # smallest slack relative to its scale
    return min(s / (1.0 + c) for s, c in zip(slacks, scales))


def _run(problem, regime, x0, y0, iters):
    trace = engine.run(problem, regime, x0, y0, iters)
    trace.raise_for_error()
    return trace


def _catalog_run(label, iters):
    entry = CATALOG[label]
    problem = entry.build()
    x0, y0 = entry.start_point(problem)
    return problem, _run(problem, entry.regime, x0, y0, iters)


def suite_problems(seed=0):
    out = []
    for label, entry in CATALOG.items():
        problem = entry.build()
        rep = check_lipschitz(problem, rng_seed=seed)
        out.append(_ok('problems', f'{label}: lipschitz', rep.passed,
                       f'max violation {rep.max_violation:.3e}'))
        slack = check_saddle(problem, rng_seed=seed)
        out.append(_ok('problems', f'{label}: saddle inequality', saddle_slack_ok(slack, problem.f_star),
                       f'min slack {slack:.3e}'))
        residual = check_prox_optimality(problem, rng_seed=seed)
        out.append(_ok('problems', f'{label}: prox optimality', residual <= 1e-10, f'residual {residual:.3e}'))
        ratios = check_prox_small_step(problem)
        bounded = all(math.isfinite(r) for r in ratios) and max(ratios) <= 2.0 * min(ratios) + 1.0
        out.append(_ok('problems', f'{label}: prox O(tau) near anchor', bounded,
                       ', '.join(f'{r:.4g}' for r in ratios)))
    understated = dataclasses.replace(bilinear(), L_yx=0.5)
    rep = check_lipschitz(understated, rng_seed=seed)
    out.append(_ok('problems', 'understated L_yx detected', not rep.passed and rep.max_violation > 0,
                   f'max violation {rep.max_violation:.3e}'))
    return out


def suite_prox(seed=0):
    out = []
    exact = (np.array_equal(prox_zero(0.2, np.array([1.5])), [1.5])
             and np.array_equal(prox_zero(5.0, np.zeros(2)), [0.0, 0.0])
             and np.array_equal(prox_zero(1e-9, np.array([-3.0])), [-3.0]))
    out.append(_ok('prox', 'prox_zero is the identity', exact))
    examples = (np.allclose(prox_quadratic(1.0)(1.0, np.array([2.0])), [1.0], rtol=0, atol=1e-15)
                and np.allclose(prox_quadratic(0.0)(7.0, np.array([3.0])), [3.0], rtol=0, atol=1e-15)
                and np.allclose(prox_quadratic(2.0)(0.5, np.array([4.0])), [2.0], rtol=0, atol=1e-15))
    out.append(_ok('prox', 'prox_quadratic closed form', examples))
    coupling = prox_bilinear_coupling([[1.0]])
    coupling_mu = prox_bilinear_coupling([[1.0]], mu=1.0)
    examples = (abs(coupling(0.2, np.array([1.2]), np.array([1.0]))[0] - 0.76) <= 1e-15
                and abs(coupling_mu(2.0 / 3.0, np.array([0.0]), np.array([1.0]))[0] - 0.6) <= 1e-15
                and coupling(3.7, np.array([0.0]), np.array([0.25]))[0] == 0.25)
    out.append(_ok('prox', 'bilinear coupling closed form', examples))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for nu in (0.5, 1.0, 2.0):
        prox = prox_quadratic(nu)
        for sigma, z in zip(rng.uniform(1e-2, 10.0, 100), sample_box(rng, 100, 2, 10.0)):
            out_pt = prox(sigma, z)
            res = np.linalg.norm((z - out_pt) / sigma - nu * out_pt)
            worst = max(worst, res / (1.0 + np.linalg.norm(z) / sigma))
    out.append(_ok('prox', 'prox_quadratic optimality residual', worst <= 1e-12, f'{worst:.3e}'))

    y_fixed = np.array([0.7])
    maps = {
        'zero': prox_zero,
        'quadratic(1)': prox_quadratic(1.0),
        'quadratic(2)': prox_quadratic(2.0),
        'coupling(mu=1)': lambda step, z: coupling_mu(step, y_fixed, z),
    }
    for name, prox in maps.items():
        slack = check_firm_nonexpansive(prox, 0.8, 1 if name.startswith('coupling') else 2, rng_seed=seed)
        out.append(_ok('prox', f'{name} firmly nonexpansive', slack >= -1e-10, f'min slack {slack:.3e}'))

    worst = -np.inf
    for nu, sigma in ((1.0, 0.5), (2.0, 3.0)):
        prox = prox_quadratic(nu)
        zs, ws = sample_box(rng, 100, 2, 10.0), sample_box(rng, 100, 2, 10.0)
        for z, w in zip(zs, ws):
            dz = np.linalg.norm(z - w)
            worst = max(worst, np.linalg.norm(prox(sigma, z) - prox(sigma, w)) - dz / (1.0 + sigma * nu)
                        - 1e-12 * dz)
    out.append(_ok('prox', 'prox_quadratic contraction 1/(1+sigma nu)', worst <= 0, f'{worst:.3e}'))
    return out


def suite_schedules(seed=0):
    out = []
    nu, tau0, sigma0 = 1.0, 0.5, 0.5
    csc = convex_strongly_concave(nu)
    states = schedules.schedule_states(schedules.Accelerated(tau0, sigma0, 2.0), csc)
    t_err, growth, partial = 0.0, np.inf, np.inf
    t_sum = 0.0
    for k in range(10_001):
        s = next(states)
        t_err = max(t_err, abs(s.t_k - s.tau_k / tau0) / (s.tau_k / tau0))
        if k >= 1:
            growth = min(growth, s.t_k / s.sigma_k - nu * nu * sigma0 / 9.0 * k * k)
        if k >= 2:
            partial = min(partial, t_sum - nu * sigma0 / 12.0 * k * k)
        t_sum += s.t_k
    out.append(_ok('schedules', 'accelerated t_k = tau_k / tau_0', t_err <= 1e-12, f'max rel err {t_err:.3e}'))
    out.append(_ok('schedules', 'accelerated t_k / sigma_k >= (nu^2 sigma0 / 9) k^2', growth >= 0, f'{growth:.4g}'))
    out.append(_ok('schedules', 'accelerated sum t_i >= (nu sigma0 / 12) k^2', partial >= 0, f'{partial:.4g}'))

    try:
        schedules.validate_accelerated(1.0, 10.0, 1.0, 0.0, 0.0, 1.0)
        rejected = False
    except ConstraintViolated:
        rejected = True
    out.append(_ok('schedules', 'sigma0 above (9+3 sqrt 13)/(2 nu) rejected', rejected))
    delta = schedules.validate_accelerated(1.0, 8.0, 1.0, 0.0, 0.0, 1.0)
    out.append(_ok('schedules', 'sigma0 = 8 accepted at nu = 1', delta == 1.0, f'delta {delta}'))

    cases = [(bilinear(), CATALOG['bilinear'].regime), (csc, CATALOG['csc'].regime),
             (strongly_convex_strongly_concave(), CATALOG['scsc'].regime)]
    for problem, regime in cases:
        worst = np.inf
        states = schedules.schedule_states(regime, problem)
        for _ in range(1001):
            s = next(states)
            first, second = schedules.step_inequalities(s, problem.L_yx, problem.L_yy)
            worst = min(worst, first / (1.0 + 1.0 / s.tau_k), second / (1.0 + 1.0 / s.sigma_k))
        out.append(_ok('schedules', f'{regime.name}: step inequalities with delta', worst >= -1e-12,
                       f'min rel slack {worst:.3e}'))

    theta, mu = 0.6, 1.0
    sigma, tau = schedules.linear_rate_params(theta, mu, nu)
    exact = abs(1.0 + mu * tau - 1.0 / theta) <= 1e-14 / theta and abs(1.0 + nu * sigma - 1.0 / theta) <= 1e-14 / theta
    out.append(_ok('schedules', 'linear 1 + mu tau = 1 + nu sigma = 1/theta', exact))
    states = schedules.schedule_states(schedules.LinearRate(theta, 1.0), strongly_convex_strongly_concave(mu, nu))
    t_err, partial, t_sum = 0.0, np.inf, 0.0
    for k in range(1001):
        s = next(states)
        if k >= 1:
            partial = min(partial, t_sum / theta ** (-(k - 1)) - 1.0)
        t_err = max(t_err, abs(s.t_k * theta ** k - 1.0))
        t_sum += s.t_k
    out.append(_ok('schedules', 'linear t_k = theta^-k', t_err <= 1e-12, f'max rel err {t_err:.3e}'))
    out.append(_ok('schedules', 'linear sum t_i >= theta^-(k-1)', partial >= -1e-12, f'{partial:.3e}'))

    states = schedules.schedule_states(CATALOG['bilinear'].regime, bilinear())
    unit = all(next(states).t_k == 1.0 for _ in range(1000))
    out.append(_ok('schedules', 'constant regime t_k = 1', unit))
    return out


def suite_engine(seed=0):
    out = []
    problem = bilinear()
    trace = _run(problem, schedules.ConstantUnit(0.2, 0.2, 2.0), [1.0], [1.0], 10_001)
    xs, ys = np.array(trace.xs)[:, 0], np.array(trace.ys)[:, 0]
    hand = (abs(ys[1] - 1.2) <= 1e-14 and abs(xs[1] - 0.76) <= 1e-14
            and abs(ys[2] - 1.304) <= 1e-14 and abs(xs[2] - 0.4992) <= 1e-14)
    out.append(_ok('engine', 'bilinear hand iterates', hand, f'y2={ys[2]!r} x2={xs[2]!r}'))

    sigma = tau = 0.2
    y_sum, x_sum, err = ys[0], xs[0], 0.0
    for i in range(1000):
        x_prev = xs[i - 1] if i > 0 else xs[0]
        y_sum += sigma * (2.0 * xs[i] - x_prev)
        x_sum -= tau * ys[i + 1]
        err = max(err, abs(ys[i + 1] - y_sum), abs(xs[i + 1] - x_sum))
    out.append(_ok('engine', 'accumulated sums of the bilinear recursion', err <= STEP_RTOL, f'{err:.3e}'))

    err = 0.0
    for k in range(1, 10_001):
        xhat, yhat = trace.xhat[k - 1][0], trace.yhat[k - 1][0]
        x_form = (ys[k + 1] - ys[0] - sigma * xs[k]) / (k * sigma)
        y_form = (xs[0] - xs[k]) / (k * tau)
        err = max(err, abs(xhat - x_form) / (abs(x_form) + 1e-14), abs(yhat - y_form) / (abs(y_form) + 1e-14))
    out.append(_ok('engine', 'ergodic closed forms (x0 - x^k factor)', err <= 1e-9, f'max rel err {err:.3e}'))

    corrected, printed = dg.counterexample_closed_form(trace, 1)
    f1 = f_value(problem, trace.xhat[0], trace.yhat[0])
    out.append(_ok('engine', 'closed form at k = 1 matches f(xhat, yhat)',
                   abs(corrected - f1) <= 1e-12 and abs(f1 - 0.912) <= 1e-12,
                   f'corrected {corrected:.6g}, printed {printed:.6g}'))

    prob, regime, x0, y0 = counterexample_setup(0.1)
    adv = _run(prob, regime, x0, y0, 101)
    ax, ay = np.array(adv.xs)[:, 0], np.array(adv.ys)[:, 0]
    hand = (abs(ay[1] - 1.1) <= 1e-14 and abs(ax[1] - 0.9) <= 1e-14
            and abs(ay[2] - 1.189) <= 1e-14 and abs(ax[2] - 0.875) <= 1e-14)
    out.append(_ok('engine', 'adversarial hand iterates', hand))
    partial = np.cumsum(1.0 / np.arange(1, 102) ** 2)
    err = float(np.max(np.abs(ax[1:] - (1.0 - 0.1 * partial))))
    out.append(_ok('engine', 'adversarial x^{k+1} = x^0 - eps sum 1/(i+1)^2', err <= 1e-12, f'{err:.3e}'))

    again = _run(problem, schedules.ConstantUnit(0.2, 0.2, 2.0), [1.0], [1.0], 10_001)
    same = all(np.array_equal(a, b) for a, b in zip(trace.xs + trace.xhat, again.xs + again.xhat))
    out.append(_ok('engine', 'identical inputs give identical traces', same))

    calls = []

    def counted(x, y):
        calls.append(1)
        return problem.grad_y_phi(x, y)

    _run(dataclasses.replace(problem, grad_y_phi=counted), CATALOG['bilinear'].regime, [1.0], [1.0], 50)
    out.append(_ok('engine', 'one gradient evaluation per step', len(calls) == 51, f'{len(calls)} calls'))

    still = _run(problem, CATALOG['bilinear'].regime, [0.0], [0.0], 100)
    out.append(_ok('engine', 'saddle start is a fixed point',
                   all(not x.any() for x in still.xs) and all(not y.any() for y in still.ys)))

    rng = np.random.default_rng(seed)
    theta = 0.6
    points = rng.uniform(-1.0, 1.0, size=(3000, 1))
    acc = engine.ErgodicAccumulator()
    for j, p in enumerate(points):
        acc = engine.ergodic_update(acc, 1.0 if j == 0 else 1.0 / theta, p, p, is_ratio=True)
    log_w = np.arange(3000) * -math.log(theta)
    w = np.exp(log_w - log_w[-1])
    direct = math.fsum(w * points[:, 0]) / math.fsum(w)
    scale = math.fsum(w * np.abs(points[:, 0])) / math.fsum(w)
    err = abs(acc.mean_x[0] - direct) / scale
    out.append(_ok('engine', 'geometric-weight ergodic mean vs direct sum', err <= 1e-12, f'{err:.3e}'))
    return out


def suite_counterexample(seed=0):
    problem, regime, x0, y0 = counterexample_setup(0.1)
    trace = _run(problem, regime, x0, y0, COUNTEREXAMPLE_ITERS)
    rows = dg.build_rows(problem, trace, cert_stride=0)
    min_x = min(float(r.x[0]) for r in rows)
    min_y = min(float(r.y[0]) for r in rows)
    min_f = min(r.f_ergodic for r in rows)
    max_gap = max(abs(r.gap_ergodic) for r in rows)
    return [
        _ok('counterexample', 'gap-zero', max_gap <= 1e-10, f'max |gap| {max_gap:.3e}'),
        _ok('counterexample', 'value-floor f(xhat, yhat) > (1 - eps^2)/2', min_f > 0.495, f'min {min_f:.6f}'),
        _ok('counterexample', 'iterate-floors x^k > 1/2, y^k > 1 - eps^2', min_x > 0.5 and min_y > 0.99,
            f'min x {min_x:.6f}, min y {min_y:.6f}'),
    ]


def _certificate_sweep(problem, trace, probes):
    descent, telescoping, c_lower, qk = [], [], [], []
    for k in range(CERT_ITERS):
        params, params_next = trace.params(k), trace.params(k + 1)
        state, state_next = trace.state(k), trace.state(k + 1)
        for probe in probes:
            cert = dg.certificate(problem, params, state, state_next, probe)
            scale = dg.certificate_scale(cert)
            descent.append((dg.descent_slack(cert), scale))
            c_lower.append((dg.c_lower_slack(cert), scale))
            a_next = dg.a_value(problem, params_next, state_next, probe)
            nxt = cert._replace(a_k=a_next)
            telescoping.append((dg.telescoping_slack(cert, nxt, params.t_k, params_next.t_k),
                                params.t_k * abs(cert.b_k1) + params_next.t_k * abs(a_next)))
            if k >= 1:
                qk.append((dg.check_qk_bound(problem, state, params, probe[1]), scale))
    return {'descent': descent, 'telescoping': telescoping, 'c_k lower bound': c_lower, 'q_k bound': qk}


def suite_certificates(seed=0):
    out = []
    rng = np.random.default_rng(seed)
    for label in ('bilinear', 'csc'):
        problem, trace = _catalog_run(label, CERT_ITERS + 1)
        probes = dg.sample_points(rng, CERT_PROBES, problem.dim_x, problem.dim_y)
        for name, pairs in _certificate_sweep(problem, trace, probes).items():
            worst = _worst(*zip(*pairs))
            out.append(_ok('certificates', f'{label}: {name}', worst >= -SUM_RTOL, f'min rel slack {worst:.3e}'))
    return out


def suite_ergodic(seed=0):
    out = []
    for label in CATALOG:
        problem, trace = _catalog_run(label, ERGODIC_ITERS)
        sx, sy, scale = dg.ergodic_sweep(problem, trace, ERGODIC_ITERS)
        worst = float(np.min(np.minimum(sx, sy) / (1.0 + scale)))
        first = dg.first_violation(np.minimum(sx, sy), scale)
        detail = f'min rel slack {worst:.3e}' if first is None else f'first violation at k={first + 1}'
        out.append(_ok('ergodic', f'{label}: Jensen bounds around the value error, every k <= {ERGODIC_ITERS}',
                       first is None, detail))
        if label in ('bilinear', 'counterexample'):
            dev = float(np.max(np.maximum(np.abs(sx), np.abs(sy)) / (1.0 + scale)))
            out.append(_ok('ergodic', f'{label}: equality under bilinearity', dev <= 1e-12, f'{dev:.3e}'))
    return out

def _sandwich_rows(problem, trace, k_max):
    rows = dg.build_rows(problem, trace, cert_stride=0)[:k_max]
    bad = [r.k for r in rows if not dg.sandwich_ok(r)]
    return rows, bad


def suite_sandwich(seed=0):
    out = []
    rng = np.random.default_rng(seed)
    problem = bilinear()
    regime = CATALOG['bilinear'].regime
    bad_total = []
    for start in rng.uniform(-5.0, 5.0, size=(5, 2)):
        trace = _run(problem, regime, start[:1], start[1:], SANDWICH_ITERS)
        _, bad = _sandwich_rows(problem, trace, SANDWICH_ITERS)
        bad_total += bad
    out.append(_ok('sandwich', 'bilinear O(1/k), 5 random starts', not bad_total, f'{len(bad_total)} violations'))

    csc, trace_csc = _catalog_run('csc', SANDWICH_ITERS)
    rows, bad = _sandwich_rows(csc, trace_csc, SANDWICH_ITERS)
    out.append(_ok('sandwich', 'csc O(1/k^2) for k >= 2', not bad, f'{len(bad)} violations'))
    held = all(dg.printed_lower_ok(r) for r in rows)
    out.append(_ok('sandwich', 'csc printed lower bound (record only)', True, 'held' if held else 'violated'))

    scsc, trace_scsc = _catalog_run('scsc', LINEAR_ITERS)
    rows, bad = _sandwich_rows(scsc, trace_scsc, LINEAR_ITERS)
    out.append(_ok('sandwich', 'scsc theta^(k-1)', not bad, f'{len(bad)} violations'))
    held = all(dg.printed_lower_ok(r) for r in rows)
    out.append(_ok('sandwich', 'scsc printed lower bound (record only)', True, 'held' if held else 'violated'))

    k = 500
    for label in ('bilinear', 'csc'):
        prob, trace = _catalog_run(label, k)
        saddle = prob.require_saddle()[:2]
        _, lhs, rhs = dg.prop_inequality_check(prob, trace, saddle, k)
        out.append(_ok('sandwich', f'{label}: weighted sum bound at the saddle',
                       within(lhs, rhs, SUM_RTOL) and within(0.0, lhs, SUM_RTOL),
                       f'lhs {lhs:.4g}, rhs {rhs:.4g}'))
        _, lhs, _ = dg.prop_inequality_check(prob, trace, (trace.x0, trace.y0), k)
        out.append(_ok('sandwich', f'{label}: weighted sum bound at the start', within(lhs, 0.0, SUM_RTOL),
                       f'lhs {lhs:.4g}'))
        probes = dg.sample_points(rng, CERT_PROBES, prob.dim_x, prob.dim_y)
        prop, gap_bound = [], []
        for probe in probes:
            s, lhs, rhs = dg.prop_inequality_check(prob, trace, probe, k)
            prop.append((s, abs(lhs) + abs(rhs)))
            for kk in (1, 10, 100, k):
                s, lhs, rhs = dg.ergodic_gap_bound_check(prob, trace, probe, kk)
                gap_bound.append((s, abs(lhs) + abs(rhs)))
        worst = _worst(*zip(*prop))
        out.append(_ok('sandwich', f'{label}: weighted sum bound, random probes', worst >= -SUM_RTOL, f'{worst:.3e}'))
        worst = _worst(*zip(*gap_bound))
        out.append(_ok('sandwich', f'{label}: ergodic gap bound with iterate terms', worst >= -SUM_RTOL,
                       f'{worst:.3e}'))
        worst = min(dg.iterate_bound_check(prob, trace, kk) for kk in range(k + 1))
        out.append(_ok('sandwich', f'{label}: iterates stay bounded', worst >= -SUM_RTOL, f'{worst:.3e}'))
    return out


def value_error_frame(problem, trace):
    """k and value_error columns computed straight from the ergodic means"""
    errs = [f_value(problem, xh, yh) - problem.f_star for xh, yh in zip(trace.xhat, trace.yhat)]
    return pd.DataFrame({'k': np.arange(1, trace.iters + 1), 'value_error': errs})


def suite_rates(seed=0):
    out = []
    k = np.arange(10, 1001)
    fit = dg.fit_rate(pd.DataFrame({'k': k, 'e': 5.0 / k}), 'e', window=(10, 1000))
    out.append(_ok('rates', 'synthetic 5/k slope -1', abs(fit.value + 1.0) <= 1e-6, f'{fit.value:.9f}'))
    k = np.arange(1, 201)
    fit = dg.fit_rate(pd.DataFrame({'k': k, 'e': 3.0 * 0.6 ** k}), 'e', model='geometric')
    out.append(_ok('rates', 'synthetic 3 * 0.6^k ratio 0.6', abs(fit.value - 0.6) <= 1e-6, f'{fit.value:.9f}'))

    problem, trace = _catalog_run('bilinear', RATE_ITERS)
    fit = dg.fit_rate(value_error_frame(problem, trace), window=(100, RATE_ITERS))
    out.append(_ok('rates', 'bilinear f(xhat, yhat) power slope <= -1.8', fit.value <= -1.8, f'{fit.value:.4f}'))

    problem, trace = _catalog_run('csc', SANDWICH_ITERS)
    fit = dg.fit_rate(value_error_frame(problem, trace))
    out.append(_ok('rates', 'csc value error power slope <= -1.7', fit.value <= -1.7,
                   f'slope {fit.value:.4f}, expected band [-2.3, -1.7], lower end not enforced'))

    problem, trace = _catalog_run('scsc', 200)
    fit = dg.fit_rate(value_error_frame(problem, trace), model='geometric')
    out.append(_ok('rates', 'scsc value error ratio <= 0.62', fit.value <= 0.62, f'{fit.value:.4f}'))
    dist = [math.hypot(float(np.linalg.norm(x)), float(np.linalg.norm(y))) for x, y in zip(trace.xs[1:], trace.ys[1:])]
    frame = pd.DataFrame({'k': np.arange(1, trace.iters + 1), 'dist': dist})
    fit = dg.fit_rate(frame, 'dist', model='geometric')
    out.append(_ok('rates', 'scsc iterate distance ratio <= 0.62', fit.value <= 0.62, f'{fit.value:.4f}'))
    return out


SUITES = {
    'problems': suite_problems,
    'prox': suite_prox,
    'schedules': suite_schedules,
    'engine': suite_engine,
    'counterexample': suite_counterexample,
    'certificates': suite_certificates,
    'ergodic': suite_ergodic,
    'sandwich': suite_sandwich,
    'rates': suite_rates,
}


def main(suite='all', seed=0):
    """run one suite or all of them

    :param suite: suite name or 'all'
    :type suite: str
    :param seed: probe sampling seed
    :type seed: int
    :return: one row per check with columns suite, check, passed, detail
    :rtype: pandas.DataFrame
    """
    if suite != 'all' and suite not in SUITES:
        raise ConstraintViolated(f"unknown suite {suite!r}, choose from all, {', '.join(SUITES)}")
    names = list(SUITES) if suite == 'all' else [suite]
    results = []
    for name in names:
        try:
            results += SUITES[name](seed)
        except OGAProxError as err:
            results.append(_ok(name, 'suite raised', False, str(err)))
    return pd.DataFrame(results, columns=CheckResult._fields)
