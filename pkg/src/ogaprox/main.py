# command line front end: run a problem, verify the invariant suites, fit rates from a trace

import json
import logging
import math
import sys
from argparse import ArgumentParser, RawDescriptionHelpFormatter
from dataclasses import dataclass

import matplotlib.pyplot as plt
import numpy as np

from ogaprox import diagnostics, engine, schedules, verify
from ogaprox.problem import SaddleProblem
from ogaprox.problems import CATALOG, get_entry
from ogaprox.schedules import RegimeSpec
from ogaprox.utils import (ConstraintViolated, DualPoint, OGAProxError,
                           PrimalPoint, get_config, parse_vector,
                           setup_logging)

logger = logging.getLogger(__name__)

REGIMES = ('constant', 'accelerated', 'linear', 'adversarial')
DEFAULT_ITERS = 1000


def _epilog():
    lines = ["problems:"]
    lines += [f"  {label:15s} {entry.notes} (default {schedules.describe(entry.regime)})"
              for label, entry in CATALOG.items()]
    lines += ["regimes: " + ", ".join(REGIMES),
              "exit codes: 0 ok, 1 invariant failure, 2 usage/config error, 3 numeric failure"]
    return "\n".join(lines)


def get_arg(raw_args=None):
    parser = ArgumentParser(description="OGAProx saddle-point solver and diagnostics",
                            epilog=_epilog(), formatter_class=RawDescriptionHelpFormatter)
    parser.add_argument('-c', '--cfg', type=str, default=None, help='yaml config file')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    run_p = sub.add_parser('run', help='run OGAProx and write trace csv + summary json')
    run_p.add_argument('--problem', type=str, default=None, choices=sorted(CATALOG))
    run_p.add_argument('--regime', type=str, default=None, choices=REGIMES)
    run_p.add_argument('--iters', type=int, default=None, help='number of iterations')
    run_p.add_argument('--tau', type=float, default=None, help='primal step (constant regime)')
    run_p.add_argument('--sigma', type=float, default=None, help='dual step (constant regime)')
    run_p.add_argument('--tau0', type=float, default=None, help='initial primal step (accelerated)')
    run_p.add_argument('--sigma0', type=float, default=None, help='initial dual step (accelerated)')
    run_p.add_argument('--c-alpha', dest='c_alpha', type=float, default=None, help='auxiliary constant c_alpha > L_yx')
    run_p.add_argument('--theta', type=float, default=None, help='rate of the linear regime')
    run_p.add_argument('--alpha', type=float, default=None, help='alpha of the linear regime')
    run_p.add_argument('--mu', type=float, default=None, help='strong convexity of Phi(., y)')
    run_p.add_argument('--nu', type=float, default=None, help='strong convexity of g')
    run_p.add_argument('--dim', type=int, default=None, help='dimension of the bilinear problem')
    run_p.add_argument('--epsilon', type=float, default=None, help='adversarial schedule constant')
    run_p.add_argument('--x0', type=str, default=None, help='primal start, e.g. "1" or "[1,2]"')
    run_p.add_argument('--y0', type=str, default=None, help='dual start')
    run_p.add_argument('--seed', type=int, default=None, help='probe sampling seed')
    run_p.add_argument('--trace', type=str, default=None, help='trace csv path')
    run_p.add_argument('--summary', type=str, default=None, help='summary json path')
    run_p.add_argument('--cert-stride', dest='cert_stride', type=int, default=None,
                     help='certificate slack every N rows, 0 disables')
    run_p.add_argument('--progress', action='store_true', help='tqdm progress bar')

    verify_p = sub.add_parser('verify', help='run the invariant suites')
    verify_p.add_argument('--suite', type=str, default='all', help='all | ' + ' | '.join(list(verify.SUITES)))
    verify_p.add_argument('--seed', type=int, default=0, help='probe sampling seed')

    rates_p = sub.add_parser('rates', help='fit a convergence rate to a trace column')
    rates_p.add_argument('trace', type=str, help='trace csv written by run')
    rates_p.add_argument('--model', type=str, default='power', choices=('power', 'geometric'))
    rates_p.add_argument('--window', type=int, nargs=2, default=None, metavar=('K_LO', 'K_HI'))
    rates_p.add_argument('--column', type=str, default='value_error')
    rates_p.add_argument('--plot', type=str, default=None, help='save a figure of the fit here')

    args = parser.parse_args(raw_args)
    config = get_config(args.cfg) if args.cfg else {}
    return args, config


@dataclass(frozen=True)
class RunConfig:
    """settings of one run, validated against the regime when the run starts"""
    problem: SaddleProblem
    regime: RegimeSpec
    x0: PrimalPoint
    y0: DualPoint
    iters: int = DEFAULT_ITERS
    seed: int = 0
    trace: str = "trace.csv"
    summary: str = "summary.json"
    cert_stride: int = 1
    progress: bool = False


def _pick(args, config, name, default=None):
    # flag > yaml > default
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name.upper(), default)


def resolve_run(args, config):
    """problem, regime, start point and output settings from flags, yaml and catalog defaults

    :return: run settings
    :rtype: RunConfig
    """
    label = _pick(args, config, 'problem', 'counterexample')
    entry = get_entry(label)
    params = {}
    if label == 'bilinear' and _pick(args, config, 'dim') is not None:
        params['n'] = int(_pick(args, config, 'dim'))
    if label in ('csc', 'scsc') and _pick(args, config, 'nu') is not None:
        params['nu'] = float(_pick(args, config, 'nu'))
    if label == 'scsc' and _pick(args, config, 'mu') is not None:
        params['mu'] = float(_pick(args, config, 'mu'))
    epsilon = _pick(args, config, 'epsilon')
    if label == 'counterexample' and epsilon is not None:
        params['epsilon'] = float(epsilon)
    problem = entry.build(**params)

    regime_name = _pick(args, config, 'regime', entry.regime.name)
    regime = make_regime(regime_name, args, config, problem, entry.regime)

    x0, y0 = entry.start_point(problem)
    if _pick(args, config, 'x0') is not None:
        x0 = parse_vector(_pick(args, config, 'x0'))
    if _pick(args, config, 'y0') is not None:
        y0 = parse_vector(_pick(args, config, 'y0'))
    return RunConfig(
        problem, regime, x0, y0,
        iters=int(_pick(args, config, 'iters', DEFAULT_ITERS)),
        seed=int(_pick(args, config, 'seed', 0)),
        trace=_pick(args, config, 'trace', 'trace.csv'),
        summary=_pick(args, config, 'summary', 'summary.json'),
        cert_stride=int(_pick(args, config, 'cert_stride', 1)),
        progress=bool(getattr(args, 'progress', False)))


def make_regime(name, args, config, problem, catalog_regime):
    """build the RegimeSpec; unset fields come from the catalog regime when it has the same kind"""
    base = catalog_regime if catalog_regime.name == name else None

    def field(flag, attr, fallback):
        value = _pick(args, config, flag)
        if value is not None:
            return float(value)
        if base is not None and getattr(base, attr, None) is not None:
            return getattr(base, attr)
        return fallback

    c_alpha = field('c_alpha', 'c_alpha', schedules.default_c_alpha(problem.L_yx))
    if name == 'constant':
        tau0, sigma0 = schedules.default_constant_steps(c_alpha, problem.L_yx, problem.L_yy)
        return schedules.ConstantUnit(field('tau', 'tau', tau0), field('sigma', 'sigma', sigma0), c_alpha)
    if name == 'accelerated':
        tau0, sigma0 = schedules.default_constant_steps(c_alpha, problem.L_yx, problem.L_yy)
        if problem.nu > 0:
            sigma0 = min(sigma0, schedules.SIGMA0_CAP_NUM / (2.0 * problem.nu))
        return schedules.Accelerated(field('tau0', 'tau0', tau0), field('sigma0', 'sigma0', sigma0), c_alpha)
    if name == 'linear':
        alpha = field('alpha', 'alpha', 1.0)
        if problem.mu > 0 and problem.nu > 0:
            tt = schedules.theta_tilde(alpha, problem.mu, problem.nu, problem.L_yx, problem.L_yy)
        else:
            tt = 0.0
        return schedules.LinearRate(field('theta', 'theta', 0.5 * (1.0 + tt)), alpha)
    if name == 'adversarial':
        return schedules.Adversarial(field('epsilon', 'epsilon', 0.1))
    raise ConstraintViolated(f"unknown regime {name!r}, choose from {REGIMES}")


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def make_summary(problem, regime, trace, rows, frame, seed):
    """summary json content of a run"""
    model = diagnostics.default_model(regime)
    try:
        fit = diagnostics.fit_rate(frame, 'value_error', model=model)
        fitted = {'model': fit.model, 'value': fit.value, 'residual': fit.residual}
    except OGAProxError as err:
        logger.info("no rate fit for %s: %s", problem.label, err)
        fitted = None
    regime_fields = {k: _clean(v) for k, v in vars(regime).items()}
    regime_fields.update(name=regime.name, delta=_clean(trace.delta))
    floors = {
        'min_x': float(min(row.x.min() for row in rows)) if rows else None,
        'min_y': float(min(row.y.min() for row in rows)) if rows else None,
        'min_f_ergodic': float(min(row.f_ergodic for row in rows)) if rows else None,
    }
    gaps = [abs(row.gap_ergodic) for row in rows if not math.isnan(row.gap_ergodic)]
    return {
        'run': problem.label,
        'regime': regime_fields,
        'iters': trace.iters,
        'stop_reason': trace.stop_reason,
        'seed': seed,
        'final_value_error': _clean(rows[-1].value_error) if rows else None,
        'fitted_rate': fitted,
        'floors': floors,
        'max_abs_gap': max(gaps) if gaps else None,
        'violations': diagnostics.row_violations(rows),
        'printed_lower_bound_held': all(diagnostics.printed_lower_ok(row) for row in rows),
    }


def cmd_run(cfg):
    """run, then write the trace csv and the summary json

    :param cfg: resolved run settings
    :type cfg: RunConfig
    :return: exit code
    :rtype: int
    """
    problem, regime = cfg.problem, cfg.regime
    trace = engine.run(problem, regime, cfg.x0, cfg.y0, cfg.iters, progress=cfg.progress)
    rows = diagnostics.build_rows(problem, trace, cert_stride=cfg.cert_stride)
    frame = diagnostics.trace_frame(rows)
    frame.to_csv(cfg.trace, index=False, float_format='%.17g', na_rep='nan')
    summary = make_summary(problem, regime, trace, rows, frame, cfg.seed)
    with open(cfg.summary, 'w') as outfile:
        json.dump(summary, outfile, indent=2)
    print(f"{problem.label} {schedules.describe(regime)}: {trace.iters} iterations ({trace.stop_reason})")
    print(f"trace -> {cfg.trace}, summary -> {cfg.summary}")
    if trace.error is not None:
        print(f"error: {trace.error}", file=sys.stderr)
        return trace.error.exit_code
    return 0


def cmd_verify(suite, seed=0):
    table = verify.main(suite, seed=seed)
    print(table.to_string(index=False))
    failed = int((~table['passed']).sum())
    print(f"{len(table) - failed}/{len(table)} checks passed")
    return 0 if failed == 0 else 1


def plot_fit(frame, column, fit, show=False):
    k = frame['k'].to_numpy(dtype=np.float64)
    err = np.abs(frame[column].to_numpy(dtype=np.float64))
    plt.figure(figsize=(10, 6))
    plt.plot(k, err, label=column)
    if fit.model == 'power':
        plt.loglog(k, np.exp(fit.intercept) * k ** fit.slope, '--', label=f'slope {fit.slope:.3f}')
    else:
        plt.semilogy(k, np.exp(fit.intercept + fit.slope * k), '--', label=f'ratio {fit.value:.4f}')
    plt.xlabel('k')
    plt.ylabel(f'|{column}|')
    plt.title(f'{column} rate fit ({fit.model})')
    plt.legend()
    if show:
        plt.show()
    return plt


def cmd_rates(path, model='power', window=None, column='value_error', plot=None):
    frame = diagnostics.read_trace(path)
    fit = diagnostics.fit_rate(frame, column, window=window, model=model)
    label = 'slope' if model == 'power' else 'ratio'
    print(f"{column}: {model} {label} = {fit.value:.6g}, residual = {fit.residual:.3g}, points = {fit.points}")
    if plot:
        fig = plot_fit(frame, column, fit)
        fig.savefig(plot)
        fig.close()
        print(f"plot -> {plot}")
    return 0


def main(raw_args=None):
    """cli entry point

    :param raw_args: argument list, defaults to sys.argv
    :type raw_args: List[str], optional
    :return: exit code
    :rtype: int
    """
    try:
        args, config = get_arg(raw_args)
        setup_logging(args.verbose)
        if args.command == 'run':
            return cmd_run(resolve_run(args, config))
        if args.command == 'verify':
            return cmd_verify(args.suite, seed=args.seed)
        return cmd_rates(args.trace, args.model, args.window, args.column, args.plot)
    except OGAProxError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
