import pytest

import cytrace
from cytrace.common.checks.check import PropertyCheck, Violation, expect_failure
from cytrace.common.errors import SchemaError, UsageError

SMALL_BOUNDS = {
    'index_relations': {'bound': 12, 'primes': [2, 3]},
    'grothendieck': {'bound': 6},
    'theta': {'bound': 4},
    'witt_ring': {'rings': ['z:0', 'z:4'], 'trunc': 6, 'trials': 5, 'bound': 12, 'diagram_trials': 10,
                  'r': [1, 2, 3]},
    'trace_laws': {'rings': ['z:0'], 'sizes': [1, 2], 'trunc': 6, 'r': [1, 2], 'trials': 5,
                   'control_trials': 20},
    'index_circle': {'bound': 6, 'order': [2, 3]},
    'subdivision': {'truncation': 3, 'r': [2], 'iterate_truncation': 3},
    'bar_operators': {'truncation': 3, 'r': [1, 2]},
    'conjugacy': {'truncation': 2},
    'coherence': {'primes': [2, 3]},
    'semidirect_theta': {'truncation': 2},
}

def test_every_suite_has_small_bounds():
    assert sorted(SMALL_BOUNDS) == sorted(cytrace.supported_suites)

@pytest.mark.parametrize('name', sorted(SMALL_BOUNDS))
def test_suite_passes_on_small_bounds(name):
    suite = cytrace.get_suite(name, seed=0, **SMALL_BOUNDS[name])
    assert suite.suite_name == name
    results, results_str = suite.eval()
    assert results_str.startswith(f'=== {name} ===')
    failed = [str(result) for result in results.values() if not result.passed]
    assert failed == []

def test_suite_check_names():
    suite = cytrace.get_suite('theta', **SMALL_BOUNDS['theta'])
    names = [check.name for check in suite.get_checks()]
    assert names == ['theta_iso', 'implication', 'collapse_rejected', 'kan_scaffold',
                     'corrupted_composition_rejected']

def test_unknown_suite():
    with pytest.raises(ValueError, match='not recognized'):
        cytrace.get_suite('mystery')

def test_unknown_bound():
    with pytest.raises(UsageError, match='not recognized'):
        cytrace.get_suite('coherence', trials=3)

@pytest.mark.parametrize('value', [0, -1, 2.5, True, [2, 0]])
def test_bad_bound_values(value):
    with pytest.raises(UsageError):
        cytrace.get_suite('index_circle', order=value)

def test_bad_ring_bound():
    with pytest.raises(SchemaError):
        cytrace.get_suite('witt_ring', rings=['z:1'])

def test_default_bounds_are_copied():
    suite = cytrace.get_suite('coherence', primes=[2])
    assert suite.bounds == {'primes': [2]}
    assert cytrace.get_suite('coherence').bounds == {'primes': [2, 3, 5]}

def test_property_check():
    check = PropertyCheck('parity', lambda: (4, [Violation('n even', witness=3)]))
    result = check.compute()
    assert not result.passed
    assert result.n_cases == 4
    assert str(result).startswith('parity: FAIL (4 cases')
    assert check.compute(return_dict=True)['violations'] == [
        {'identity': 'n even', 'degree': None, 'witness': 3, 'count': 1}]

def test_expect_failure():
    assert expect_failure('control', lambda: (1, [Violation('x')])).compute().passed
    undetected = expect_failure('control', lambda: (1, [])).compute()
    assert not undetected.passed
    assert undetected.violations[0].identity == 'control should have been rejected'

def _run_check(suite, name):
    check = next(check for check in suite.get_checks() if check.name == name)
    return check.compute()

def test_iterated_subdivision_covers_every_pair():
    suite = cytrace.get_suite('subdivision', truncation=2, r=[2, 3])
    assert suite.bounds['iterate_truncation'] == 8
    result = _run_check(suite, 'iterated')
    # four complexes times the pairs (2, 2), (2, 3), (3, 2), (3, 3)
    assert result.n_cases == 16
    assert result.passed

def test_iterated_subdivision_reports_uncovered_pairs():
    suite = cytrace.get_suite('subdivision', truncation=2, r=[2, 3], iterate_truncation=5)
    result = _run_check(suite, 'iterated')
    assert not result.passed
    assert {v.identity for v in result.violations} == {'sd_3 sd_3 = sd_9 not covered'}

@pytest.mark.parametrize('primes, controls', [
    ([2], ['swapped_weights_rejected']),
    ([2, 3], ['swapped_weights_rejected', 'dbar_first_rejected']),
])
def test_coherence_rejects_corrupted_cubes(primes, controls):
    suite = cytrace.get_suite('coherence', primes=primes)
    assert [check.name for check in suite.get_checks()] == ['face_relations'] + controls
    for name in controls:
        result = _run_check(suite, name)
        assert result.passed
        assert 'face of the cube' in result.details['detected']
