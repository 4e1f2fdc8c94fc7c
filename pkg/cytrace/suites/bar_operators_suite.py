import numpy as np

from cytrace.categories.barcat import cyclic_bar, diagonal_restriction, frobenius_bar, nerve, project_to_nerve
from cytrace.categories.fincat import get_builtin_category, validate_category
from cytrace.common.checks.check import PropertyCheck, Violation
from cytrace.common.utils import first_mismatches
from cytrace.complexes.simplicial import compose_maps, identity_map, validate, validate_map
from cytrace.suites.cytrace_suite import CytraceSuite

BAR_MONOIDS = ['z2', 'z3', 'z4', 's3', 'idempotent']

def _power(C, g, r):
    out = C.identity(C.src(g))
    for _ in range(r):
        out = C.compose(g, out)
    return out

def _maps_agree(identity, f, g, name, through=None):
    """
    One violation per degree where the tables of f and g differ, up to degree through.
    """
    violations = []
    top = min(f.truncation, g.truncation) if through is None else through
    for k in range(top + 1):
        bad = first_mismatches(f[k], g[k])
        if len(bad):
            violations.append(Violation(identity, degree=k, witness=(name, int(bad[0])), count=len(bad)))
    return violations

class BarOperatorsSuite(CytraceSuite):
    """
    The cyclic bar construction of small monoids with its operators: validity of the
    nerve and the cyclic bar construction, Delta_r and R_r as inverse cyclic isomorphisms
    onto the fixed part of sd_r, and the Frobenius operators Fbar_r, which compose
    multiplicatively, fix the projection to the nerve and raise to the r-th power in degree 0.
    """
    _suite_name = 'bar_operators'
    DEFAULT_BOUNDS = {
        'truncation': 5,
        'r': [1, 2, 3],
    }

    def get_checks(self):
        N = self._bounds['truncation']
        rs = self._bounds['r']
        monoids = {name: get_builtin_category(name) for name in BAR_MONOIDS}
        bars = {name: cyclic_bar(C, N) for name, C in monoids.items()}
        valid_rs = [r for r in rs if (N + 1) // r >= 1]
        frobenius = {(name, r): frobenius_bar(C, r, N, X=bars[name])
                     for name, C in monoids.items() for r in valid_rs}

        def complexes():
            violations = []
            for name, C in monoids.items():
                violations += validate_category(C) + validate(bars[name]) + validate(nerve(C, N))
            return len(monoids), violations

        def diagonal():
            violations, n_cases = [], 0
            for name, C in monoids.items():
                X = bars[name]
                for r in valid_rs:
                    n_cases += 1
                    dr = diagonal_restriction(C, r, N, X=X)
                    violations += validate_map(dr.delta) + validate_map(dr.restriction)
                    for k in range(dr.fixed.truncation + 1):
                        if np.any(dr.restriction[k][dr.delta[k]] != np.arange(X.counts[k])):
                            violations.append(Violation('R_r Delta_r = id', degree=k, witness=(name, r)))
                        if np.any(dr.delta[k][dr.restriction[k]] != np.arange(dr.fixed.counts[k])):
                            violations.append(Violation('Delta_r R_r = id', degree=k, witness=(name, r)))
            return n_cases, violations

        def frobenius_maps():
            violations = []
            for (name, r), F in frobenius.items():
                violations += validate_map(F)
                if r == 1:
                    violations += _maps_agree('Fbar_1 = id', F, identity_map(bars[name]), name)
            return len(frobenius), violations

        def multiplicative():
            violations, n_cases = [], 0
            for name, C in monoids.items():
                for r in valid_rs:
                    for s in valid_rs:
                        through = (N + 1) // (r * s) - 1
                        if through < 0:
                            continue
                        n_cases += 1
                        rs_map = frobenius_bar(C, r * s, N, X=bars[name])
                        composite = compose_maps(frobenius[(name, r)], frobenius[(name, s)], name=f'Fbar_{r} Fbar_{s}')
                        violations += _maps_agree(f'Fbar_{r} Fbar_{s} = Fbar_{r*s}', composite, rs_map, name, through)
            return n_cases, violations

        def projection():
            violations, n_cases = [], 0
            for name, C in monoids.items():
                p = project_to_nerve(C, N, X=bars[name])
                for r in valid_rs:
                    n_cases += 1
                    F = frobenius[(name, r)]
                    violations += _maps_agree(f'p Fbar_{r} = p', compose_maps(p, F), p, name, F.truncation)
            return n_cases, violations

        def degree_zero():
            violations, n_cases = [], 0
            for name, C in monoids.items():
                X = bars[name]
                for r in valid_rs:
                    F = frobenius[(name, r)]
                    for x, (g,) in enumerate(X.labels[0]):
                        n_cases += 1
                        if F[0][x] != X.index_of(0, (_power(C, g, r),)):
                            violations.append(Violation(f'Fbar_{r}(g) = g^{r}', degree=0,
                                                        witness=(name, C.morphisms[g])))
            return n_cases, violations

        return [
            PropertyCheck('complexes', complexes),
            PropertyCheck('diagonal_restriction', diagonal),
            PropertyCheck('frobenius_maps', frobenius_maps),
            PropertyCheck('multiplicative', multiplicative),
            PropertyCheck('projection', projection),
            PropertyCheck('degree_zero', degree_zero),
        ]
