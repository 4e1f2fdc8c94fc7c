from cytrace.common.checks.check import PropertyCheck, Violation, expect_failure
from cytrace.common.rings import get_ring
from cytrace.common.utils import truncation_set
from cytrace.suites.cytrace_suite import CytraceSuite
from cytrace.witt.trace import char_series, cycle_matrix, identity_matrix, trace_property_suite, trc0
from cytrace.witt.witt_vector import WittVector, frobenius_witt, ghost, witt_add, zero

CYCLE_TYPES = [(1,), (2,), (3,), (4,), (2, 1), (2, 2), (3, 2), (3, 1, 1), (4, 2)]

class TraceLawsSuite(CytraceSuite):
    """
    The characteristic series trace det(1 - tA) into truncated Witt vectors:
    the randomized homomorphism laws, the worked example of the swap matrix,
    permutation matrices of a given cycle type, and a stub product that must be caught.
    """
    _suite_name = 'trace_laws'
    DEFAULT_BOUNDS = {
        'rings': ['z:0', 'z:5'],
        'sizes': [1, 2, 3],
        'trunc': 12,
        'r': [1, 2, 3, 4],
        'trials': 200,
        'control_trials': 20,
    }

    def config(self, trials=None):
        return {
            'rings': list(self._bounds['rings']),
            'sizes': list(self._bounds['sizes']),
            'S': self._bounds['trunc'],
            'r': list(self._bounds['r']),
            'trials': trials or self._bounds['trials'],
            'seed': self._seed,
        }

    def eval(self):
        laws = trace_property_suite(self.config())
        results = dict(laws)
        results_str = f'=== {self.suite_name} ===\n' + ''.join(f'{result}\n' for result in laws.values())
        extra, extra_str = super().eval()
        results.update(extra)
        results_str += extra_str.split('\n', 1)[1]
        return results, results_str

    def get_checks(self):
        def worked_example():
            ring = get_ring('z:0')
            swap = [[0, 1], [1, 0]]
            x = trc0(ring, swap, truncation_set(4))
            expected = {
                'trc0(swap) = (0, 1, 0)': x == WittVector(ring, (1, 2, 4), [0, 1, 0]),
                'ghost(trc0(swap)) = (0, 2, 2)': ghost(x) == (0, 2, 2),
                'F_2 trc0(swap) = (2, -1)': frobenius_witt(x, 2) == WittVector(ring, (1, 2), [2, -1]),
                'F_2 trc0(swap) = trc0(I_2)': frobenius_witt(x, 2) == trc0(ring, identity_matrix(ring, 2), (1, 2)),
            }
            return len(expected), [Violation(identity) for identity, holds in expected.items() if not holds]

        def cycle_types():
            violations, n_cases = [], 0
            S = truncation_set(self._bounds['trunc'])
            for tag in self._bounds['rings']:
                ring = get_ring(tag)
                for cycle_type in CYCLE_TYPES:
                    n_cases += 1
                    total = zero(ring, S)
                    for n in cycle_type:
                        single = cycle_matrix(ring, (n,))
                        series = char_series(ring, single, n)
                        if series != [ring.one] + [ring.zero] * (n - 1) + [ring.neg(ring.one)]:
                            violations.append(Violation('det(1 - tA) = 1 - t^n for an n-cycle', witness=(tag, n)))
                        total = witt_add(total, trc0(ring, single, S))
                    if trc0(ring, cycle_matrix(ring, cycle_type), S) != total:
                        violations.append(Violation('trc0 of a cycle type is the sum over its cycles',
                                                    witness=(tag, cycle_type)))
            return n_cases, violations

        def stub_multiplication():
            law = trace_property_suite(self.config(self._bounds['control_trials']),
                                       witt_mul=lambda x, y: x)['multiplicativity']
            return law.n_cases, law.violations

        return [
            PropertyCheck('worked_example', worked_example),
            PropertyCheck('cycle_types', cycle_types),
            expect_failure('stub_multiplication_rejected', stub_multiplication),
        ]
