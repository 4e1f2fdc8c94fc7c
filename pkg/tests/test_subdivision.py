import numpy as np
import pytest
import sympy

from cytrace.categories.barcat import cyclic_bar
from cytrace.common.errors import TruncationError, UsageError
from cytrace.common.utils import permutation_power
from cytrace.complexes.builtin import circle, sphere2
from cytrace.complexes.simplicial import validate, validate_map
from cytrace.complexes.subdivision import (
    CubeLabel, compare_iterated_subdivision, concatenate_monotone, cube_homotopy, cube_symbols, dbar_map,
    edgewise_subdivide, fixed_subcomplex, verify_cube_face_relations)
from cytrace.suites.coherence_suite import dbar_first_cube, swapped_weights_cube

def test_concatenate_monotone():
    # the coface skipping 1 in [1] -> [2], doubled
    assert concatenate_monotone((0, 2), 2, 2) == (0, 2, 3, 5)

def test_circle_subdivision():
    sub = edgewise_subdivide(circle(5), 2)
    Y = sub.result
    assert Y.counts == [2, 4, 6]
    assert Y.is_cyclic and Y.multiplicity == 2
    assert validate(Y) == []

@pytest.mark.parametrize('r', [2, 3])
def test_bar_subdivision_is_valid(z2, r):
    sub = edgewise_subdivide(cyclic_bar(z2, 5), r)
    assert validate(sub.result) == []
    for k, g in enumerate(sub.cr_generator):
        assert np.array_equal(permutation_power(g, r), np.arange(sub.result.counts[k]))

def test_fixed_points_are_the_diagonal(z2):
    sub = edgewise_subdivide(cyclic_bar(z2, 3), 2)
    fixed, inclusion = fixed_subcomplex(sub)
    assert fixed.counts[0] == 2
    assert sorted(fixed.labels[0]) == [(0, 0), (1, 1)]
    assert fixed.multiplicity == 1
    assert validate(fixed) == []
    assert validate_map(inclusion) == []

def test_subdivision_without_cyclic_structure():
    sub = edgewise_subdivide(sphere2(5), 2)
    assert not sub.result.is_cyclic
    assert sub.cr_generator is None
    with pytest.raises(ValueError):
        fixed_subcomplex(sub)

def test_dbar_is_simplicial(z3):
    X = cyclic_bar(z3, 4)
    assert validate_map(dbar_map(X, 2)) == []

def test_subdivision_errors():
    with pytest.raises(TruncationError):
        edgewise_subdivide(circle(1), 3)
    with pytest.raises(UsageError):
        edgewise_subdivide(circle(3), 0)

def test_iterated_subdivision(z2):
    assert compare_iterated_subdivision(circle(7), 2, 2) == []
    assert compare_iterated_subdivision(cyclic_bar(z2, 5), 2, 3) == []

def test_cube_labels():
    assert CubeLabel.word(frobenius=(3,)).then(CubeLabel.word((2,), (5,))) == CubeLabel.word((2, 3), (5,))
    assert str(CubeLabel.word((2,), (3,))) == 'Dbar_3 o D_2'
    assert str(CubeLabel.word((3, 2))) == 'D_2*3'
    with pytest.raises(ValueError):
        CubeLabel.word(dbar=(2,)).then(CubeLabel.word(frobenius=(3,)))

def test_cube_labels_keep_the_order_of_d_and_dbar():
    dbar_first = CubeLabel.word(dbar=(2,)).then(CubeLabel.word(frobenius=(3,)), strict=False)
    assert not dbar_first.is_normal
    assert dbar_first != CubeLabel.word((3,), (2,))
    assert dbar_first.frobenius == (3,) and dbar_first.dbar == (2,)
    assert str(dbar_first) == 'D_3 o Dbar_2'
    assert CubeLabel.word((2,), (3,)).is_normal and CubeLabel().is_normal

def test_cube_homotopy_endpoints():
    symbols = cube_symbols((2,))
    h = cube_homotopy((2,), symbols)
    t = symbols[2]
    assert {label: sympy.expand(c.subs(t, 0)) for label, c in h.items()} == {
        CubeLabel.word(frobenius=(2,)): 1, CubeLabel.word(dbar=(2,)): 0}

def test_cube_face_relations():
    rows = verify_cube_face_relations((2, 3, 5))
    assert len(rows) == 2 * (2 ** 3 - 1)
    assert all(row['passed'] for row in rows)
    with pytest.raises(UsageError):
        verify_cube_face_relations((4,))

def test_corrupted_cubes_fail_the_face_relations():
    swapped = verify_cube_face_relations((2,), homotopy=swapped_weights_cube)
    assert not any(row['passed'] for row in swapped)
    # one prime: the dbar-first words coincide with the correct ones
    assert all(row['passed'] for row in verify_cube_face_relations((2,), homotopy=dbar_first_cube))
    assert not any(row['passed'] for row in verify_cube_face_relations((2, 3), homotopy=dbar_first_cube))
