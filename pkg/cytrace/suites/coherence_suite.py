import itertools

import sympy

from cytrace.common.checks.check import PropertyCheck, Violation, expect_failure
from cytrace.complexes.subdivision import CubeLabel, cube_homotopy, cube_symbols, verify_cube_face_relations
from cytrace.suites.cytrace_suite import CytraceSuite

def _cube_terms(U, symbols, weight, letters):
    U = tuple(sorted(U))
    symbols = symbols or cube_symbols(U)
    terms = {}
    for size in range(len(U) + 1):
        for W in itertools.combinations(U, size):
            rest = tuple(p for p in U if p not in W)
            coefficient = sympy.Integer(1)
            for p in U:
                coefficient *= weight(symbols[p], p in W)
            label = CubeLabel.from_letters(letters(rest, W))
            terms[label] = terms.get(label, 0) + coefficient
    return terms

def swapped_weights_cube(U, symbols=None):
    """
    The cube with t_p and 1 - t_p exchanged: Dbar_W o D_{U-W} weighted by
    prod_{p in W} (1 - t_p) * prod_{p not in W} t_p.
    """
    return _cube_terms(U, symbols, lambda t, in_W: 1 - t if in_W else t,
                       lambda rest, W: [('D', p) for p in rest] + [('Dbar', p) for p in W])

def dbar_first_cube(U, symbols=None):
    """
    The cube with the correct weights but words applying Dbar_W before D_{U-W}.
    """
    return _cube_terms(U, symbols, lambda t, in_W: t if in_W else 1 - t,
                       lambda rest, W: [('Dbar', p) for p in W] + [('D', p) for p in rest])

class CoherenceSuite(CytraceSuite):
    """
    The cube homotopies built from D_p and Dbar_p restrict on every face of the
    cube to the homotopy of the smaller set of primes, precomposed with D_V on the
    lower faces and followed by Dbar_V on the upper ones. Two corrupted cubes must
    be rejected.
    """
    _suite_name = 'coherence'
    DEFAULT_BOUNDS = {
        'primes': [2, 3, 5],
    }

    def get_checks(self):
        primes = sorted(set(self._bounds['primes']))

        def face_relations(homotopy=cube_homotopy):
            violations, n_cases = [], 0
            for size in range(1, len(primes) + 1):
                for U in itertools.combinations(primes, size):
                    for row in verify_cube_face_relations(U, homotopy=homotopy):
                        n_cases += 1
                        if not row['passed']:
                            violations.append(Violation(f'{row["face"]} face of the cube', witness=(row['U'], row['V'])))
            return n_cases, violations

        checks = [PropertyCheck('face_relations', face_relations)]
        checks.append(expect_failure('swapped_weights_rejected', lambda: face_relations(swapped_weights_cube)))
        # a single prime gives one-letter words, where the order cannot show
        if len(primes) >= 2:
            checks.append(expect_failure('dbar_first_rejected', lambda: face_relations(dbar_first_cube)))
        return checks
