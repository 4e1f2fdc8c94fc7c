from cytrace.categories.fincat import monoid_category
from cytrace.categories.indexcat import (
    GROUP_ACTIONS, CatValuedFunctor, check_theta_iso, collapsing_functor, constant_functor,
    group_action_functor, natural_numbers_functor, truncated_multiplication_monoid, verify_kan_scaffold)
from cytrace.common.checks.check import PropertyCheck, Violation, expect_failure
from cytrace.suites.cytrace_suite import CytraceSuite

def corrupted_functor(B):
    """
    natural_numbers_functor(B) over a base whose table claims 2 * 2 = 3.
    """
    F = natural_numbers_functor(B)
    K = F.base
    table = K.compose_table.copy()
    two, three = K.morphism_index(2), K.morphism_index(3)
    table[two, two] = three
    corrupted = monoid_category(K.morphisms, table, name=f'{K.name} (corrupted)')
    return CatValuedFunctor(corrupted, F.fibers, F.functors, name=F.name)

def theta_instances(B):
    """
    (name, functor, base object, fiber object) for every instance where the slice
    hypothesis is expected to hold.
    """
    instances = []
    F = natural_numbers_functor(B)
    for n in F.fibers[0].objects:
        instances.append((f'N<={B} at {n}', F, '*', n))
    for name, make in GROUP_ACTIONS.items():
        G, H, action = make()
        instances.append((name, group_action_functor(G, H, action, name=name), '*', '*'))
    instances.append(('constant', constant_functor(truncated_multiplication_monoid(B)), '*', '*'))
    return instances

class ThetaSuite(CytraceSuite):
    """
    The comparison functor Theta on Grothendieck constructions and the adjunction
    scaffolding around it. On every instance where each F(f) induces isomorphisms of
    slices, Theta must be an isomorphism of categories; a functor that collapses two
    objects over a third must fail the slice hypothesis.
    """
    _suite_name = 'theta'
    DEFAULT_BOUNDS = {
        'bound': 6,
    }

    def get_checks(self):
        B = self._bounds['bound']
        instances = theta_instances(B)

        def theta_iso():
            violations = []
            for name, F, K_obj, A_obj in instances:
                report = check_theta_iso(F, K_obj, A_obj)
                for v in report.hypothesis_witnesses[:1] + report.theta_witnesses[:1]:
                    violations.append(Violation(v.identity, witness=(name, v.witness)))
            return len(instances), violations

        def implication():
            violations = []
            cases = instances + [('collapse', collapsing_functor(), '*', 'c')]
            for name, F, K_obj, A_obj in cases:
                if not check_theta_iso(F, K_obj, A_obj).implication_holds:
                    violations.append(Violation('slice hypothesis implies Theta iso', witness=name))
            return len(cases), violations

        def collapse():
            return 1, check_theta_iso(collapsing_functor(), '*', 'c').hypothesis_witnesses

        def kan_scaffold():
            violations, seen = [], set()
            for name, F, K_obj, _ in instances:
                if id(F) in seen:
                    continue
                seen.add(id(F))
                for v in verify_kan_scaffold(F, K_obj).violations:
                    violations.append(Violation(v.identity, witness=(F.name, v.witness)))
            return len(seen), violations

        def corrupted():
            return 1, verify_kan_scaffold(corrupted_functor(max(B, 4)), '*').violations

        return [
            PropertyCheck('theta_iso', theta_iso),
            PropertyCheck('implication', implication),
            expect_failure('collapse_rejected', collapse),
            PropertyCheck('kan_scaffold', kan_scaffold),
            expect_failure('corrupted_composition_rejected', corrupted),
        ]
