import itertools

import numpy as np
import pytest

from cytrace.common.errors import SchemaError, TruncationError
from cytrace.complexes.builtin import get_builtin, point, quotient_simplex
from cytrace.complexes.simplicial import (
    CyclicSet, SimplicialSet, apply_monotone, compose_maps, eilenberg_zilber, identity_map, nondegenerate,
    validate, validate_map)

def test_builtin_counts(circle4, sphere4):
    assert circle4.counts == [1, 2, 3, 4, 5]
    assert sphere4.counts == [1, 1, 2, 4, 7]
    assert point(3).counts == [1, 1, 1, 1]

@pytest.mark.parametrize('name', ['point', 'circle', 'sphere2'])
def test_builtins_are_valid(name):
    assert validate(get_builtin(name, 5)) == []

def test_circle_is_cyclic(circle4):
    assert circle4.is_cyclic
    assert circle4.multiplicity == 1
    # t_k is a single (k+1)-cycle
    t = circle4.t(3)
    orbit, x = {0}, int(t[0])
    while x != 0:
        orbit.add(x)
        x = int(t[x])
    assert len(orbit) == 4

def test_quotient_simplex_nondegenerate():
    X = quotient_simplex(3, 4)
    assert [len(nondegenerate(X, k)) for k in range(5)] == [1, 0, 0, 1, 0]

def test_broken_face_is_reported():
    X = get_builtin('circle', 3)
    faces = [[]] + [[X.face(k, i).copy() for i in range(k + 1)] for k in range(1, 4)]
    degeneracies = [[X.degeneracy(k, i) for i in range(k + 1)] for k in range(3)]
    faces[2][0] = np.ones(X.counts[2], dtype=np.int64)
    broken = SimplicialSet(X.counts, faces, degeneracies)
    violations = validate(broken)
    assert any(v.identity == 'd_0 s_0 = id' and v.degree == 1 for v in violations)

def test_broken_cyclic_operator_is_reported(z2):
    from cytrace.categories.barcat import cyclic_bar
    X = cyclic_bar(z2, 2)
    cyclic = [X.t(k) for k in range(3)]
    cyclic[1] = np.arange(X.counts[1], dtype=np.int64)
    faces = [[]] + [[X.face(k, i) for i in range(k + 1)] for k in range(1, 3)]
    degeneracies = [[X.degeneracy(k, i) for i in range(k + 1)] for k in range(2)]
    broken = CyclicSet(X.counts, faces, degeneracies, cyclic)
    assert any(v.identity == 's_0 t = t^2 s_k' for v in validate(broken))

def test_out_of_range_table_is_a_schema_error():
    with pytest.raises(SchemaError):
        SimplicialSet([1, 1], [[], [[0], [5]]], [[[0]]])
    with pytest.raises(SchemaError):
        SimplicialSet([1, 2], [[], [[0], [0]]], [[[0]]])

def test_truncation_limits(circle4):
    with pytest.raises(TruncationError):
        circle4.face(5, 0)
    with pytest.raises(TruncationError):
        circle4.degeneracy(4, 0)
    truncated = circle4.truncate(2)
    assert truncated.is_cyclic and truncated.counts == [1, 2, 3]

def test_eilenberg_zilber(circle4):
    assert eilenberg_zilber(circle4, (3, 0)) == ((0, 0), (2, 1, 0))
    edge = circle4.index_of(1, (0, 1))
    assert eilenberg_zilber(circle4, (1, edge)) == ((1, edge), ())
    sigma = circle4.index_of(2, (0, 0, 1))
    assert eilenberg_zilber(circle4, (2, sigma)) == ((1, edge), (0,))

def test_apply_monotone(circle4):
    edge = circle4.index_of(1, (0, 1))
    # (0, 0, 1): [2] -> [1] is the codegeneracy hitting 0 twice
    assert apply_monotone(circle4, (0, 0, 1), (1, edge)) == (2, circle4.index_of(2, (0, 0, 1)))
    # (1,): [0] -> [1] picks the last vertex
    assert apply_monotone(circle4, (1,), (1, edge)) == (0, 0)
    with pytest.raises(ValueError):
        apply_monotone(circle4, (1, 0), (1, edge))

def _monotone_maps(m, n):
    """
    Every monotone map [m] -> [n], as (f(0), ..., f(m)).
    """
    return list(itertools.combinations_with_replacement(range(n + 1), m + 1))

@pytest.mark.parametrize('name', ['circle4', 'sphere4'])
def test_apply_monotone_is_contravariant(name, request):
    X = request.getfixturevalue(name)
    for a, b, c in itertools.product(range(4), repeat=3):
        for f in _monotone_maps(a, b):
            for g in _monotone_maps(b, c):
                gf = tuple(g[i] for i in f)
                for x in range(X.counts[c]):
                    assert apply_monotone(X, gf, (c, x)) == apply_monotone(X, f, apply_monotone(X, g, (c, x)))

def test_maps(circle4):
    ident = identity_map(circle4)
    assert validate_map(ident) == []
    assert ident.cyclic
    composite = compose_maps(ident, ident)
    assert all(np.array_equal(composite[k], ident[k]) for k in range(5))
