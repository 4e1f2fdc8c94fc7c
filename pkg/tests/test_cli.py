import json
import os

import pandas as pd
import pytest

from cytrace.cli import EXIT_FAIL, EXIT_PASS, EXIT_SCHEMA, EXIT_USAGE, main, resolve_suites, run_suite
from cytrace.common.errors import UsageError

SMALL_CONFIG = {
    'kind': 'suite_config',
    'checks': ['coherence', 'conjugacy'],
    'seed': 3,
    'bounds': {'coherence': {'primes': [2, 3]}, 'conjugacy': {'truncation': 2}},
}

def _write_config(tmp_path, payload, name='suite.json'):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)

def _without_timings(report):
    checks = {name: {k: v for k, v in result.items() if k != 'seconds'} for name, result in report['checks'].items()}
    return {**report, 'checks': checks}

def test_no_command():
    assert main([]) == EXIT_USAGE

def test_help_and_version(capsys):
    assert main(['--help']) == EXIT_PASS
    assert main(['--version']) == EXIT_PASS
    assert 'cytrace' in capsys.readouterr().out

def test_argument_errors():
    assert main(['witt', 'mul', '--trunc', 'x']) == EXIT_USAGE
    assert main(['coherence', '--primes', '2,a']) == EXIT_USAGE
    assert main(['suite', '--jobs', '0', '--checks', 'coherence']) == EXIT_USAGE

def test_resolve_suites():
    assert resolve_suites(['coherence', 'coherence', 'conjugacy']) == ['coherence', 'conjugacy']
    assert len(resolve_suites(['all', 'theta'])) == 11
    with pytest.raises(UsageError):
        resolve_suites(['coherence', 'mystery'])

def test_suite_from_config(tmp_path, capsys):
    out = tmp_path / 'out'
    assert main(['suite', '--config', _write_config(tmp_path, SMALL_CONFIG), '--output_dir', str(out)]) == EXIT_PASS
    report = json.loads((out / 'report.json').read_text())
    assert report['kind'] == 'report'
    assert report['seed'] == 3
    assert report['suites'] == ['coherence', 'conjugacy']
    assert set(report['checks']) == {'coherence.face_relations', 'coherence.swapped_weights_rejected',
                                     'coherence.dbar_first_rejected', 'conjugacy.components',
                                     'conjugacy.nerve_z2', 'conjugacy.groupoid_like'}
    table = pd.read_csv(out / 'report.csv')
    assert list(table.columns) == ['check', 'passed', 'n_cases', 'n_violations', 'seconds']
    assert table['passed'].all()
    assert (out / 'report.txt').read_text().startswith('=== coherence ===')
    assert 'all passed' in capsys.readouterr().out

def test_report_is_deterministic(tmp_path):
    config = _write_config(tmp_path, SMALL_CONFIG)
    for name in ('a', 'b'):
        assert main(['suite', '--config', config, '--output_dir', str(tmp_path / name)]) == EXIT_PASS
    first = json.loads((tmp_path / 'a' / 'report.json').read_text())
    second = json.loads((tmp_path / 'b' / 'report.json').read_text())
    assert _without_timings(first) == _without_timings(second)

def test_parallel_run_matches_serial():
    serial, _ = run_suite(SMALL_CONFIG, jobs=1)
    parallel, _ = run_suite(SMALL_CONFIG, jobs=2)
    assert _without_timings(serial) == _without_timings(parallel)

def test_seed_flag_overrides_config(tmp_path):
    out = tmp_path / 'out'
    config = _write_config(tmp_path, SMALL_CONFIG)
    assert main(['suite', '--config', config, '--seed', '11', '--output_dir', str(out)]) == EXIT_PASS
    assert json.loads((out / 'report.json').read_text())['seed'] == 11

def test_empty_check_list(output_dir):
    assert main(['suite', '--checks', '']) == EXIT_PASS
    report = json.loads((output_dir / 'report.json').read_text())
    assert report['checks'] == {}

def test_output_dir_from_environment(output_dir):
    assert main(['suite', '--checks', 'coherence']) == EXIT_PASS
    assert (output_dir / 'report.json').exists()
    assert (output_dir / 'report.csv').exists()

def test_unknown_check_runs_nothing(tmp_path):
    out = tmp_path / 'out'
    assert main(['suite', '--checks', 'coherence,mystery', '--output_dir', str(out)]) == EXIT_USAGE
    assert not out.exists()

def test_bad_bounds(tmp_path):
    out = str(tmp_path / 'out')
    stray = {**SMALL_CONFIG, 'bounds': {'theta': {'bound': 3}}}
    assert main(['suite', '--config', _write_config(tmp_path, stray), '--output_dir', out]) == EXIT_USAGE
    bad = {**SMALL_CONFIG, 'bounds': {'coherence': {'primes': [0]}}}
    assert main(['suite', '--config', _write_config(tmp_path, bad), '--output_dir', out]) == EXIT_USAGE
    unknown = {**SMALL_CONFIG, 'bounds': {'coherence': {'trials': 3}}}
    assert main(['suite', '--config', _write_config(tmp_path, unknown), '--output_dir', out]) == EXIT_USAGE
    assert not os.path.exists(out)

def test_malformed_config(tmp_path):
    path = tmp_path / 'suite.json'
    path.write_text('{"kind": "suite_config", "checks": [')
    assert main(['suite', '--config', str(path)]) == EXIT_SCHEMA
    assert main(['suite', '--config', _write_config(tmp_path, {'kind': 'witt'}, 'witt.json')]) == EXIT_SCHEMA
    not_a_list = {'kind': 'suite_config', 'checks': 'coherence'}
    assert main(['suite', '--config', _write_config(tmp_path, not_a_list)]) == EXIT_SCHEMA

def test_failing_report(tmp_path, monkeypatch):
    import cytrace.suites.coherence_suite as coherence_suite

    def broken(primes, homotopy=None):
        return [{'U': (2,), 'V': (2,), 'face': 'D', 'passed': False}]

    monkeypatch.setattr(coherence_suite, 'verify_cube_face_relations', broken)
    out = tmp_path / 'out'
    assert main(['suite', '--checks', 'coherence', '--output_dir', str(out)]) == EXIT_FAIL
    report = json.loads((out / 'report.json').read_text())
    assert report['checks']['coherence.face_relations']['passed'] is False

def test_export_and_inspect(tmp_path, capsys):
    circle = str(tmp_path / 'circle.json')
    assert main(['export', '--builtin', 'circle', '--truncation', '3', '--emit', circle]) == EXIT_PASS
    assert main(['inspect', circle]) == EXIT_PASS
    out = capsys.readouterr().out
    assert 'kind: simplicial' in out
    assert 'degree 3: 4 simplices' in out

    z3 = str(tmp_path / 'z3.json')
    assert main(['export', '--builtin', 'z3', '--emit', z3]) == EXIT_PASS
    assert main(['inspect', z3]) == EXIT_PASS
    out = capsys.readouterr().out
    assert 'kind: monoid' in out
    assert 'objects: 1, morphisms: 3, groupoid-like: True' in out

    groupoid = str(tmp_path / 'groupoid.json')
    assert main(['export', '--builtin', 'groupoid', '--emit', groupoid]) == EXIT_PASS
    assert main(['barcy', '--monoid', groupoid, '--degree', '3']) == EXIT_PASS
    assert main(['export', '--builtin', 'torus', '--emit', str(tmp_path / 'x.json')]) == EXIT_USAGE

def test_subdivide(tmp_path, capsys):
    circle = str(tmp_path / 'circle.json')
    emitted = str(tmp_path / 'sd.json')
    main(['export', '--builtin', 'circle', '--truncation', '3', '--emit', circle])
    assert main(['subdivide', '--input', circle, '--r', '2', '--emit', emitted]) == EXIT_PASS
    assert 'counts [2, 4]' in capsys.readouterr().out
    assert main(['inspect', emitted]) == EXIT_PASS
    assert 'cyclic: True' in capsys.readouterr().out
    assert main(['subdivide', '--r', '2']) == EXIT_USAGE

def test_homology(tmp_path, capsys):
    emitted = tmp_path / 'h.json'
    assert main(['homology', '--builtin', 'sphere2', '--truncation', '4', '--through', '3',
                 '--emit', str(emitted)]) == EXIT_PASS
    out = capsys.readouterr().out
    assert 'H_0 = Z' in out
    assert 'H_2 = Z' in out
    assert json.loads(emitted.read_text())['1'] == {'betti': 0, 'torsion': []}
    assert main(['homology', '--builtin', 'circle', '--truncation', '4', '--through', '4']) == EXIT_USAGE

def test_barcy(capsys):
    assert main(['barcy', '--monoid', 'z3', '--degree', '4', '--check', 'frobenius', '--r', '1,2']) == EXIT_PASS
    assert 'counts [3, 9, 27, 81, 243]' in capsys.readouterr().out
    for check in ('valid', 'diagonal', 'projection'):
        assert main(['barcy', '--monoid', 's3', '--degree', '3', '--check', check]) == EXIT_PASS
    assert main(['barcy', '--monoid', 'z3', '--degree', '1', '--r', '3']) == EXIT_USAGE
    assert main(['barcy', '--monoid', 'z7']) == EXIT_USAGE

def test_indexcat(capsys):
    assert main(['indexcat', '--bound', '12']) == EXIT_PASS
    assert main(['indexcat', '--bound', '12', '--check', 'factorization', '--morphism', '12,2,2,3']) == EXIT_PASS
    assert '(12, 2, 2, 3) = F_2 o R_3' in capsys.readouterr().out
    assert main(['indexcat', '--bound', '12', '--check', 'factorization', '--morphism', '12,2,2,2']) == EXIT_USAGE
    assert main(['indexcat', '--bound', '8', '--check', 'grothendieck']) == EXIT_PASS
    assert main(['indexcat', '--bound', '4', '--check', 'theta']) == EXIT_PASS

def test_witt(tmp_path, capsys):
    assert main(['witt', 'mul', '--ring', 'z:4', '--trunc', '4', '--coords', '0,1,0', '--other', '0,1,0']) == EXIT_PASS
    assert 'coords=[0, 2, 3]' in capsys.readouterr().out
    assert main(['witt', 'frob', '--trunc', '4', '--coords', '0,1,0', '--r', '2']) == EXIT_PASS
    assert 'coords=[2, -1]' in capsys.readouterr().out
    assert main(['witt', 'ver', '--trunc', '4', '--coords', '1,0', '--r', '2']) == EXIT_PASS
    assert 'coords=[0, 1, 0]' in capsys.readouterr().out
    assert main(['witt', 'ghost', '--trunc', '4', '--coords', '0,1,0']) == EXIT_PASS
    assert 'ghost [(1, 0), (2, 2), (4, 2)]' in capsys.readouterr().out
    emitted = str(tmp_path / 'x.json')
    assert main(['witt', 'neg', '--ring', 'q', '--trunc', '2', '--coords', '1/2,0', '--emit', emitted]) == EXIT_PASS
    assert json.loads(open(emitted).read())['ring'] == 'q'

def test_witt_errors():
    assert main(['witt', 'mul', '--ring', 'z:1', '--trunc', '4', '--coords', '0,1,0', '--other', '0,1,0']) == EXIT_USAGE
    assert main(['witt', 'add', '--trunc', '4', '--coords', '0,1,0']) == EXIT_USAGE
    assert main(['witt', 'restrict', '--trunc', '4', '--coords', '0,1,0']) == EXIT_USAGE
    assert main(['witt', 'add', '--trunc', '4', '--coords', '0,1', '--other', '0,1,0']) == EXIT_SCHEMA

def test_trace(capsys):
    assert main(['trace', '--matrix', '[[0,1],[1,0]]', '--trunc', '4']) == EXIT_PASS
    out = capsys.readouterr().out
    assert 'det(1 - tA) = [1, 0, -1, 0, 0]' in out
    assert 'coords=[0, 1, 0]' in out
    assert 'ghost = [0, 2, 2]' in out
    assert main(['trace', '--matrix', '[[0,1],[1,0]]', '--trunc', '4', '--sign', '1']) == EXIT_PASS
    assert 'det(1 + tA) = [1, 0, -1, 0, 0]' in capsys.readouterr().out

def test_trace_errors():
    assert main(['trace', '--matrix', '[[2]]']) == EXIT_USAGE
    assert main(['trace', '--matrix', '[[2]]', '--allow_singular']) == EXIT_PASS
    assert main(['trace', '--matrix', 'nope']) == EXIT_USAGE
    assert main(['trace', '--matrix', '[[0,1],[1,0]]', '--trunc', '3', '--strict']) == EXIT_USAGE

def test_coherence(capsys):
    assert main(['coherence', '--primes', '2,3']) == EXIT_PASS
    assert capsys.readouterr().out.count('pass') == 6
    assert main(['coherence', '--primes', '4']) == EXIT_USAGE
