from cytrace.categories.fincat import isomorphism_violations, validate_category
from cytrace.categories.indexcat import (
    GROUP_ACTIONS, constant_functor, group_action_functor, grothendieck_construct, index_isomorphism,
    natural_numbers_functor, semidirect_isomorphism, semidirect_product, truncated_multiplication_monoid)
from cytrace.common.checks.check import PropertyCheck
from cytrace.suites.cytrace_suite import CytraceSuite

class GrothendieckSuite(CytraceSuite):
    """
    Grothendieck constructions: the multiplicative monoid acting on the divisibility
    category recovers the index category, group actions recover semidirect products,
    and a constant terminal functor recovers its base.
    """
    _suite_name = 'grothendieck'
    DEFAULT_BOUNDS = {
        'bound': 12,
    }

    def get_checks(self):
        B = self._bounds['bound']

        def index_category():
            construction = grothendieck_construct(natural_numbers_functor(B))
            violations = validate_category(construction.category) + index_isomorphism(B, construction)
            return construction.category.n_morphisms, violations

        def semidirect_products():
            violations, n_cases = [], 0
            for name, make in GROUP_ACTIONS.items():
                G, H, action = make()
                F = group_action_functor(G, H, action, name=name)
                product = semidirect_product(G, H, action)
                n_cases += product.n_morphisms
                violations += validate_category(product) + semidirect_isomorphism(F, product)
            return n_cases, violations

        def constant_terminal():
            K = truncated_multiplication_monoid(B)
            construction = grothendieck_construct(constant_functor(K))
            return K.n_morphisms, isomorphism_violations(construction.projection)

        return [
            PropertyCheck('index_category', index_category),
            PropertyCheck('semidirect_products', semidirect_products),
            PropertyCheck('constant_terminal', constant_terminal),
        ]
