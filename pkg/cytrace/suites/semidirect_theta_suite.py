from cytrace.categories.barcat import semidirect_theta
from cytrace.categories.indexcat import GROUP_ACTIONS, semidirect_product
from cytrace.common.checks.check import PropertyCheck, Violation
from cytrace.suites.cytrace_suite import CytraceSuite

class SemidirectThetaSuite(CytraceSuite):
    """
    For each builtin group action, the twisted pairing of one-sided bar constructions
    B(G,G,*) x B(H,H,*) -> B(G x| H, G x| H, *) is a simplicial isomorphism.
    """
    _suite_name = 'semidirect_theta'
    DEFAULT_BOUNDS = {
        'truncation': 3,
    }

    def get_checks(self):
        N = self._bounds['truncation']

        def isomorphism():
            violations = []
            for name, make in GROUP_ACTIONS.items():
                G, H, action = make()
                _, found = semidirect_theta(G, H, action, semidirect_product(G, H, action), N)
                violations += [Violation(v.identity, degree=v.degree, witness=(name, v.witness), count=v.count)
                               for v in found]
            return len(GROUP_ACTIONS), violations

        return [
            PropertyCheck('isomorphism', isomorphism),
        ]
