from cytrace.categories.fincat import validate_category
from cytrace.categories.indexcat import build_index_category, factor_unique, index_relations, index_subcategory
from cytrace.common.checks.check import PropertyCheck, Violation
from cytrace.common.utils import divisors
from cytrace.suites.cytrace_suite import CytraceSuite

class IndexRelationsSuite(CytraceSuite):
    """
    The index category up to a bound: the category laws, the relations between
    Frobenius and restriction morphisms, and unique factorization F_r o R_s.
    The p-primary subcategories are checked for the primes in 'primes'.
    """
    _suite_name = 'index_relations'
    DEFAULT_BOUNDS = {
        'bound': 24,
        'primes': [2, 3, 5],
    }

    def get_checks(self):
        B = self._bounds['bound']
        C = build_index_category(B)

        def category_laws():
            return C.n_morphisms ** 2, validate_category(C)

        def relations():
            return index_relations(C)

        def factorization_bijective():
            # morphisms m -> n correspond exactly to the pairs (r, s) with m = r n s
            violations, n_cases = [], 0
            for m in range(1, B + 1):
                for n in divisors(m):
                    n_cases += 1
                    a, b = C.object_index(m), C.object_index(n)
                    found = sorted((fac.r, fac.s) for fac in (factor_unique(C.morphisms[f]) for f in C.hom(a, b)))
                    expected = [(r, m // (n * r)) for r in divisors(m // n)]
                    if found != expected:
                        violations.append(Violation('factor_unique is a bijection', witness=(m, n, found)))
            return n_cases, violations

        def prime_subcategories():
            violations, n_cases = [], 0
            for p in self._bounds['primes']:
                sub = index_subcategory(B, p)
                n_cases += sub.n_morphisms
                violations += validate_category(sub)
            return n_cases, violations

        return [
            PropertyCheck('category_laws', category_laws),
            PropertyCheck('relations', relations),
            PropertyCheck('factorization_bijective', factorization_bijective),
            PropertyCheck('prime_subcategories', prime_subcategories),
        ]
