import pytest

from cytrace.categories.fincat import isomorphism_violations, validate_category
from cytrace.categories.indexcat import (
    GROUP_ACTIONS, IndexMorphism, build_index_category, check_theta_iso, collapsing_functor, constant_functor,
    factor_unique, group_action_functor, grothendieck_construct, index_circle_category, index_isomorphism,
    index_relations, index_subcategory, natural_numbers_functor, semidirect_isomorphism, semidirect_product,
    truncated_multiplication_monoid, verify_kan_scaffold)
from cytrace.common.errors import SchemaError, UsageError
from cytrace.suites.theta_suite import corrupted_functor

def test_index_category_relations():
    C = build_index_category(24)
    assert validate_category(C) == []
    n_cases, violations = index_relations(C)
    assert n_cases > C.n_morphisms
    assert violations == []

def test_index_category_rejects_empty_bound():
    with pytest.raises(UsageError):
        build_index_category(0)

def test_factor_unique():
    fac = factor_unique((12, 2, 2, 3))
    assert (fac.r, fac.s) == (2, 3)
    assert fac.restriction == IndexMorphism(12, 4, 1, 3)
    assert fac.frobenius == IndexMorphism(4, 2, 2, 1)

def test_factor_unique_rejects_non_morphism():
    with pytest.raises(SchemaError):
        factor_unique((12, 2, 2, 2))

def test_index_subcategory():
    sub = index_subcategory(24, 2)
    assert list(sub.objects) == [1, 2, 4, 8, 16]
    assert validate_category(sub) == []

def test_index_circle_category():
    I = build_index_category(6)
    C = index_circle_category(6, 3)
    assert validate_category(C) == []
    assert C.n_morphisms == 3 * I.n_morphisms
    phi = C.morphism_index((2, 1, 2, 1, 0))
    rotation = C.morphism_index((2, 2, 1, 1, 1))
    assert C.morphisms[C.compose(phi, rotation)] == (2, 1, 2, 1, 1)

def test_truncated_multiplication_monoid():
    K = truncated_multiplication_monoid(6)
    assert validate_category(K) == []
    assert K.morphisms[K.compose(K.morphism_index(2), K.morphism_index(3))] == 6
    assert K.morphisms[K.compose(K.morphism_index(3), K.morphism_index(4))] == 'inf'

def test_grothendieck_recovers_index_category():
    F = natural_numbers_functor(12)
    assert F.validate() == []
    construction = grothendieck_construct(F)
    assert validate_category(construction.category) == []
    assert index_isomorphism(12, construction) == []
    assert ('*', 5) in construction.category.objects

def test_constant_functor_recovers_base():
    K = truncated_multiplication_monoid(4)
    F = constant_functor(K)
    assert F.validate() == []
    assert isomorphism_violations(grothendieck_construct(F).projection) == []

@pytest.mark.parametrize('action', sorted(GROUP_ACTIONS))
def test_semidirect_products(action):
    G, H, table = GROUP_ACTIONS[action]()
    product = semidirect_product(G, H, table)
    assert validate_category(product) == []
    assert semidirect_isomorphism(group_action_functor(G, H, table), product) == []

def test_bad_action_table():
    G, H, table = GROUP_ACTIONS['z2_on_z3']()
    with pytest.raises(SchemaError):
        group_action_functor(G, H, table[:1])

@pytest.mark.parametrize('n', [1, 2, 3, 4, 6])
def test_theta_iso_on_natural_numbers(n):
    report = check_theta_iso(natural_numbers_functor(6), '*', n)
    assert report.hypothesis_holds
    assert report.theta_iso
    assert report.implication_holds

def test_theta_iso_on_group_action():
    G, H, table = GROUP_ACTIONS['z2_on_s3']()
    report = check_theta_iso(group_action_functor(G, H, table), '*', '*')
    assert report.theta_iso

def test_collapse_breaks_hypothesis_only():
    report = check_theta_iso(collapsing_functor(), '*', 'c')
    assert not report.hypothesis_holds
    assert report.hypothesis_witnesses
    assert report.implication_holds
    assert report.to_dict()['hypothesis_holds'] is False

def test_kan_scaffold():
    report = verify_kan_scaffold(natural_numbers_functor(6), '*')
    assert report.passed, report.violations
    assert set(report.sections) == {'functoriality', 'functors', 'naturality', 'adjunction', 'phi_psi'}

def test_kan_scaffold_rejects_corrupted_base():
    report = verify_kan_scaffold(corrupted_functor(4), '*')
    assert not report.passed
    assert report.sections['functoriality']
