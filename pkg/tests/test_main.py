# regression tests of the command line

import json

import pandas as pd
import pytest

from ogaprox import diagnostics, engine, main, schedules
from ogaprox.problems import CATALOG


def run_args(tmp_path, *extra):
    return ['run', '--trace', str(tmp_path / 'trace.csv'), '--summary', str(tmp_path / 'summary.json'), *extra]


@pytest.mark.core
def test_run_counterexample(tmp_path):
    assert main.main(run_args(tmp_path, '--problem', 'counterexample', '--iters', '300')) == 0
    summary = json.loads((tmp_path / 'summary.json').read_text())
    assert summary['run'] == 'counterexample'
    assert summary['regime']['name'] == 'adversarial'
    assert summary['iters'] == 300
    assert summary['stop_reason'] == 'max_iters'
    assert summary['floors']['min_x'] > 0.5
    assert summary['floors']['min_y'] > 0.99
    assert summary['floors']['min_f_ergodic'] > 0.495
    assert summary['max_abs_gap'] <= 1e-10
    frame = diagnostics.read_trace(tmp_path / 'trace.csv')
    assert len(frame) == 300
    assert frame['upper_bound'].isna().all()


@pytest.mark.core
def test_run_bilinear_summary(tmp_path):
    assert main.main(run_args(tmp_path, '--problem', 'bilinear', '--iters', '400', '--cert-stride', '10')) == 0
    summary = json.loads((tmp_path / 'summary.json').read_text())
    assert summary['violations'] == 0
    assert summary['fitted_rate']['model'] == 'power'
    assert summary['regime'] == {'tau': 0.2, 'sigma': 0.2, 'c_alpha': 2.0, 'name': 'constant', 'delta': 0.5}
    frame = pd.read_csv(tmp_path / 'trace.csv')
    assert frame['cert_slack'].notna().sum() == 40


@pytest.mark.core
def test_run_scsc_geometric_fit(tmp_path):
    assert main.main(run_args(tmp_path, '--problem', 'scsc', '--iters', '150')) == 0
    summary = json.loads((tmp_path / 'summary.json').read_text())
    assert summary['fitted_rate']['model'] == 'geometric'
    assert summary['fitted_rate']['value'] <= 0.62


@pytest.mark.core
@pytest.mark.parametrize('extra', [
    ['--problem', 'counterexample', '--epsilon', '0.4'],
    ['--problem', 'bilinear', '--tau', '1', '--sigma', '1'],
    ['--problem', 'scsc', '--theta', '0.4'],
    ['--problem', 'bilinear', '--regime', 'accelerated'],
    ['--problem', 'bilinear', '--x0', '[1, 2]'],
    ['--problem', 'bilinear', '--x0', 'one'],
])
def test_run_rejects_bad_settings(tmp_path, extra):
    assert main.main(run_args(tmp_path, *extra)) == 2


@pytest.mark.core
def test_run_numeric_abort_exit_code(tmp_path):
    argv = run_args(tmp_path, '--problem', 'counterexample', '--x0=-1', '--y0=0.25', '--iters', '10')
    assert main.main(argv) == 3
    summary = json.loads((tmp_path / 'summary.json').read_text())
    assert summary['stop_reason'] == 'error'
    assert summary['iters'] == 2


@pytest.mark.core
def test_unknown_problem_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as err:
        main.main(run_args(tmp_path, '--problem', 'nope'))
    assert err.value.code == 2


@pytest.mark.core
def test_yaml_config(tmp_path):
    cfg = tmp_path / 'run.yaml'
    cfg.write_text("PROBLEM: 'bilinear'\nITERS: 7\nTAU: 0.1\nX0: '[2]'\n")
    args, config = main.get_arg(['-c', str(cfg), 'run'])
    settings = main.resolve_run(args, config)
    assert settings.problem.label == 'bilinear'
    assert settings.iters == 7
    assert settings.regime == schedules.ConstantUnit(0.1, 0.2, 2.0)
    assert settings.x0.tolist() == [2.0]
    args, config = main.get_arg(['-c', str(cfg), 'run', '--iters', '9'])
    assert main.resolve_run(args, config).iters == 9


@pytest.mark.core
def test_regime_defaults():
    args, config = main.get_arg(['run', '--problem', 'csc', '--regime', 'constant'])
    regime = main.resolve_run(args, config).regime
    assert regime.tau == pytest.approx(0.9 / 2 ** 0.5)
    args, config = main.get_arg(['run', '--problem', 'scsc'])
    assert main.resolve_run(args, config).regime == schedules.LinearRate(0.6, 1.0)
    args, config = main.get_arg(['run', '--problem', 'scsc', '--alpha', '2'])
    regime = main.resolve_run(args, config).regime
    assert regime.theta == 0.6 and regime.alpha == 2.0


@pytest.mark.core
def test_rates(tmp_path, capsys):
    assert main.main(run_args(tmp_path, '--problem', 'bilinear', '--iters', '2000', '--cert-stride', '0')) == 0
    capsys.readouterr()
    trace = str(tmp_path / 'trace.csv')
    assert main.main(['rates', trace, '--window', '100', '2000']) == 0
    out = capsys.readouterr().out
    assert 'slope' in out
    slope = float(out.split('slope = ')[1].split(',')[0])
    assert slope <= -1.8
    plot = tmp_path / 'fit.png'
    assert main.main(['rates', trace, '--plot', str(plot)]) == 0
    assert plot.exists()


@pytest.mark.core
def test_rates_errors(tmp_path):
    assert main.main(['rates', str(tmp_path / 'missing.csv')]) == 2
    assert main.main(run_args(tmp_path, '--problem', 'bilinear', '--iters', '50')) == 0
    assert main.main(['rates', str(tmp_path / 'trace.csv'), '--window', '1', '5']) == 2
    assert main.main(['rates', str(tmp_path / 'trace.csv'), '--column', 'nope']) == 2


@pytest.mark.core
def test_verify_cli(capsys):
    assert main.main(['verify', '--suite', 'prox']) == 0
    assert 'checks passed' in capsys.readouterr().out
    assert main.main(['verify', '--suite', 'nope']) == 2


@pytest.mark.core
def test_trace_is_deterministic_and_lossless(tmp_path):
    first, second = tmp_path / 'a', tmp_path / 'b'
    first.mkdir()
    second.mkdir()
    for out in (first, second):
        assert main.main(run_args(out, '--problem', 'csc', '--iters', '120', '--seed', '4')) == 0
    assert (first / 'trace.csv').read_bytes() == (second / 'trace.csv').read_bytes()

    problem = CATALOG['csc'].build()
    x0, y0 = CATALOG['csc'].start_point(problem)
    trace = engine.run(problem, CATALOG['csc'].regime, x0, y0, 120)
    expected = diagnostics.trace_frame(diagnostics.build_rows(problem, trace))
    parsed = diagnostics.read_trace(first / 'trace.csv')
    for col in expected.columns:
        assert parsed[col].tolist() == pytest.approx(expected[col].tolist(), rel=0, abs=0, nan_ok=True)
