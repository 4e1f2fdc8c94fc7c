import numpy as np
import pytest

from cytrace.categories.barcat import (
    cyclic_bar, diagonal_restriction, frobenius_bar, nerve, one_sided_bar, project_to_nerve, semidirect_theta)
from cytrace.categories.fincat import (
    FinCategory, comma_over, conjugacy_class_count, get_builtin_category, idempotent_monoid, is_groupoid_like,
    monoid_category, validate_category)
from cytrace.categories.indexcat import GROUP_ACTIONS, divisibility_category, semidirect_product
from cytrace.common.errors import SchemaError, TruncationError, UsageError
from cytrace.complexes.simplicial import compose_maps, validate, validate_map

BUILTINS = ['trivial', 'z2', 'z3', 'z4', 's3', 'idempotent', 'groupoid']

@pytest.fixture
def z4():
    return get_builtin_category('z4')

@pytest.mark.parametrize('name', BUILTINS)
def test_builtin_categories_are_valid(name):
    assert validate_category(get_builtin_category(name)) == []

def test_unknown_builtin():
    with pytest.raises(SchemaError):
        get_builtin_category('z5')

def test_bad_multiplication_table():
    with pytest.raises(SchemaError):
        monoid_category(['1', 'x'], [[0, 1], [1, 2]])
    with pytest.raises(SchemaError):
        monoid_category(['x', 'y'], [[1, 0], [0, 0]])

def test_non_associative_table_is_reported():
    # (y x) x = 1 but y (x x) = y
    table = [[0, 1, 2], [1, 0, 2], [2, 1, 2]]
    C = monoid_category(['1', 'x', 'y'], table)
    assert validate_category(C)

def test_conjugacy_classes():
    counts = {name: conjugacy_class_count(get_builtin_category(name)) for name in BUILTINS}
    assert counts == {'trivial': 1, 'z2': 2, 'z3': 3, 'z4': 4, 's3': 3, 'idempotent': 2, 'groupoid': 1}

def test_groupoid_like():
    assert is_groupoid_like(get_builtin_category('s3'))
    assert is_groupoid_like(get_builtin_category('groupoid'))
    assert not is_groupoid_like(idempotent_monoid())

def test_comma_over_divisibility():
    over_two = comma_over(divisibility_category(12), 2)
    assert over_two.n_objects == 6
    assert validate_category(over_two) == []

def test_nerve_and_cyclic_bar_counts(z2, z3):
    assert nerve(z3, 2).counts == [1, 3, 9]
    X = cyclic_bar(z2, 2)
    assert X.counts == [2, 4, 8]
    assert validate(X) == []
    assert validate(nerve(z2, 3)) == []

def test_groupoid_cyclic_bar():
    X = cyclic_bar(get_builtin_category('groupoid'), 3)
    assert validate(X) == []
    # degree 0 holds the two identities, degree 1 the loops (id_a, id_a), (id_b, id_b), (u, v), (v, u)
    assert X.counts[:2] == [2, 4]

def test_frobenius_on_z3(z3):
    X = cyclic_bar(z3, 3)
    F = frobenius_bar(z3, 2, 3, X=X)
    assert validate_map(F) == []
    assert F(1, X.index_of(1, (1, 2))) == X.index_of(1, (1, 2))
    assert F(0, X.index_of(0, (1,))) == X.index_of(0, (2,))

def test_frobenius_needs_truncation(z3):
    with pytest.raises(TruncationError):
        frobenius_bar(z3, 3, 1)

def test_frobenius_is_multiplicative(s3):
    X = cyclic_bar(s3, 5)
    composite = compose_maps(frobenius_bar(s3, 2, 5, X=X), frobenius_bar(s3, 3, 5, X=X))
    assert np.array_equal(composite[0], frobenius_bar(s3, 6, 5, X=X)[0])

def test_diagonal_restriction_inverse(z2):
    X = cyclic_bar(z2, 5)
    dr = diagonal_restriction(z2, 2, 5, X=X)
    assert validate_map(dr.delta) == []
    assert validate_map(dr.restriction) == []
    for k in range(dr.fixed.truncation + 1):
        assert np.array_equal(dr.restriction[k][dr.delta[k]], np.arange(X.counts[k]))
        assert np.array_equal(dr.delta[k][dr.restriction[k]], np.arange(dr.fixed.counts[k]))

def test_projection_forgets_frobenius(z4):
    X = cyclic_bar(z4, 5)
    p = project_to_nerve(z4, 5, X=X)
    assert validate_map(p) == []
    F = frobenius_bar(z4, 2, 5, X=X)
    pF = compose_maps(p, F)
    for k in range(F.truncation + 1):
        assert np.array_equal(pF[k], p[k])

def test_one_sided_bar(z3):
    X = one_sided_bar(z3, 3)
    assert X.counts == [3, 9, 27, 81]
    assert validate(X) == []
    with pytest.raises(UsageError):
        one_sided_bar(get_builtin_category('groupoid'), 2)

@pytest.mark.parametrize('action', sorted(GROUP_ACTIONS))
def test_semidirect_theta(action):
    G, H, table = GROUP_ACTIONS[action]()
    theta, violations = semidirect_theta(G, H, table, semidirect_product(G, H, table), 2)
    assert violations == []
    assert theta.source.counts == theta.target.counts

def test_from_rule_rejects_unknown_composite():
    with pytest.raises(SchemaError):
        FinCategory.from_rule(['a'], [('id', 'a', 'a'), ('x', 'a', 'a')], {'a': 'id'},
                              lambda g, f: 'y' if 'x' in (g, f) else 'id')
