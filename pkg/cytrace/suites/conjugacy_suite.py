from cytrace.categories.barcat import cyclic_bar, nerve
from cytrace.categories.fincat import conjugacy_class_count, cyclic_group, get_builtin_category, is_groupoid_like
from cytrace.common.checks.check import PropertyCheck, Violation
from cytrace.complexes.homology import HomologyGroup, connected_components, homology
from cytrace.suites.cytrace_suite import CytraceSuite

CONJUGACY_CATEGORIES = ['trivial', 'z2', 'z3', 'z4', 's3', 'groupoid', 'idempotent']

class ConjugacySuite(CytraceSuite):
    """
    H_0 of the cyclic bar construction counts conjugacy classes: its rank agrees with
    a union-find count on the category and with the components of the 1-skeleton.
    Also checks H_1 of the nerve of Z/2 and which categories are groupoid-like.
    """
    _suite_name = 'conjugacy'
    DEFAULT_BOUNDS = {
        'truncation': 2,
    }

    def get_checks(self):
        N = self._bounds['truncation']
        categories = {name: get_builtin_category(name) for name in CONJUGACY_CATEGORIES}

        def components():
            violations = []
            for name, C in categories.items():
                X = cyclic_bar(C, N)
                betti = homology(X, 0).betti
                classes = conjugacy_class_count(C)
                if not betti == classes == connected_components(X):
                    violations.append(Violation('rank H_0(Bcy C) = conjugacy classes',
                                                witness=(name, betti, classes, connected_components(X))))
            return len(categories), violations

        def nerve_z2():
            found = homology(nerve(cyclic_group(2), N), 1)
            expected = HomologyGroup(betti=0, torsion=(2,))
            return 1, [] if found == expected else [Violation('H_1(B Z/2) = Z/2', degree=1, witness=str(found))]

        def groupoid_like():
            expected = {'trivial': True, 'z2': True, 'z3': True, 'z4': True, 's3': True,
                        'groupoid': True, 'idempotent': False}
            violations = [Violation('is_groupoid_like', witness=name) for name, C in categories.items()
                          if is_groupoid_like(C) != expected[name]]
            return len(categories), violations

        return [
            PropertyCheck('components', components),
            PropertyCheck('nerve_z2', nerve_z2),
            PropertyCheck('groupoid_like', groupoid_like),
        ]
