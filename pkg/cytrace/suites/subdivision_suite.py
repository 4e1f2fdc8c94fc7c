import numpy as np

from cytrace.categories.barcat import cyclic_bar
from cytrace.categories.fincat import cyclic_group
from cytrace.common.checks.check import PropertyCheck, Violation
from cytrace.common.utils import permutation_power
from cytrace.complexes.builtin import circle, sphere2
from cytrace.complexes.homology import ChainComplex, homology
from cytrace.complexes.simplicial import SimplicialMap, validate, validate_map
from cytrace.complexes.subdivision import (
    compare_iterated_subdivision, dbar_map, edgewise_subdivide, fixed_subcomplex)
from cytrace.suites.cytrace_suite import CytraceSuite

def subdivision_complexes(N):
    """
    The complexes the subdivision checks run on, truncated at N.
    """
    return {
        'circle': circle(N),
        'sphere2': sphere2(N),
        'Bcy(Z/2)': cyclic_bar(cyclic_group(2), N),
        'Bcy(Z/3)': cyclic_bar(cyclic_group(3), N),
    }

class SubdivisionSuite(CytraceSuite):
    """
    Edgewise subdivision: sd_r X is again a (cyclic) simplicial set, the order-r action
    is a simplicial automorphism of order r with a closed fixed part, dbar_r is a
    simplicial map, homology is unchanged in the valid range and sd_r sd_s = sd_rs.
    """
    _suite_name = 'subdivision'
    DEFAULT_BOUNDS = {
        'truncation': 5,
        'r': [2, 3],
        'iterate_truncation': 8,
    }

    def get_checks(self):
        N = self._bounds['truncation']
        rs = self._bounds['r']
        complexes = subdivision_complexes(N)
        subdivided = {(name, r): edgewise_subdivide(X, r) for name, X in complexes.items() for r in rs}

        def tagged(violations, *tag):
            return [Violation(v.identity, degree=v.degree, witness=(*tag, v.witness), count=v.count)
                    for v in violations]

        def valid():
            violations = []
            for (name, r), sub in subdivided.items():
                violations += tagged(validate(sub.result), name, r)
            return len(subdivided), violations

        def group_action():
            violations, n_cases = [], 0
            for (name, r), sub in subdivided.items():
                if sub.cr_generator is None:
                    continue
                n_cases += 1
                Y = sub.result
                for k, g in enumerate(sub.cr_generator):
                    bad = np.nonzero(permutation_power(g, r) != np.arange(len(g)))[0]
                    if len(bad):
                        violations.append(Violation('generator^r = id', degree=k, witness=(name, r, int(bad[0]))))
                generator = SimplicialMap(Y, Y, sub.cr_generator, cyclic=Y.is_cyclic, name='generator')
                violations += tagged(validate_map(generator), name, r)
                fixed, inclusion = fixed_subcomplex(sub)
                violations += tagged(validate(fixed), name, r) + tagged(validate_map(inclusion), name, r)
            return n_cases, violations

        def dbar():
            violations = []
            for (name, r), sub in subdivided.items():
                violations += tagged(validate_map(dbar_map(complexes[name], r, subdivided=sub)), name, r)
            return len(subdivided), violations

        def homology_invariance():
            violations, n_cases = [], 0
            for (name, r), sub in subdivided.items():
                X, Y = complexes[name], sub.result
                chains_X, chains_Y = ChainComplex(X), ChainComplex(Y)
                for k in range(Y.truncation):
                    n_cases += 1
                    before, after = homology(X, k, chains=chains_X), homology(Y, k, chains=chains_Y)
                    if before != after:
                        violations.append(Violation(f'H_{k}(sd_{r} X) = H_{k}(X)', degree=k,
                                                    witness=(name, str(before), str(after))))
            return n_cases, violations

        def iterated():
            violations, n_cases = [], 0
            for name, X in subdivision_complexes(self._bounds['iterate_truncation']).items():
                for r in rs:
                    for s in rs:
                        n_cases += 1
                        if (X.truncation + 1) // (r * s) < 1:
                            violations.append(Violation(f'sd_{r} sd_{s} = sd_{r*s} not covered',
                                                        witness=(name, X.truncation)))
                            continue
                        violations += tagged(compare_iterated_subdivision(X, r, s), name)
            return n_cases, violations

        return [
            PropertyCheck('valid', valid),
            PropertyCheck('group_action', group_action),
            PropertyCheck('dbar_map', dbar),
            PropertyCheck('homology_invariance', homology_invariance),
            PropertyCheck('iterated', iterated),
        ]
