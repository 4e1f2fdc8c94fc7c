import pytest

from cytrace.categories.barcat import cyclic_bar, nerve
from cytrace.categories.fincat import conjugacy_class_count
from cytrace.common.errors import TruncationError
from cytrace.complexes.builtin import circle
from cytrace.complexes.homology import (
    ChainComplex, HomologyGroup, connected_components, homology, homology_through, smith_normal_form)
from cytrace.complexes.subdivision import edgewise_subdivide

def test_smith_normal_form():
    assert smith_normal_form([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form([[6, 0], [0, 4]]) == (2, 12)
    assert smith_normal_form([[0, 0], [0, 0]]) == ()
    assert smith_normal_form([]) == ()
    assert smith_normal_form([[-3, 0], [0, 0]]) == (3,)
    assert smith_normal_form([[4, 0, 0], [0, 6, 0], [0, 0, 10]]) == (2, 2, 60)

def test_circle_and_sphere(circle4, sphere4):
    assert homology_through(circle4, 2) == [HomologyGroup(1, ()), HomologyGroup(1, ()), HomologyGroup(0, ())]
    assert homology_through(sphere4, 3) == [
        HomologyGroup(1, ()), HomologyGroup(0, ()), HomologyGroup(1, ()), HomologyGroup(0, ())]

def test_subdivision_keeps_homology():
    Y = edgewise_subdivide(circle(5), 2).result
    assert homology(Y, 0) == HomologyGroup(1, ())
    assert homology(Y, 1) == HomologyGroup(1, ())

def test_classifying_space_of_z2(z2):
    X = nerve(z2, 3)
    assert homology(X, 1) == HomologyGroup(0, (2,))
    assert homology(X, 2) == HomologyGroup(0, ())

def test_conjugacy_classes_of_s3(s3):
    X = cyclic_bar(s3, 2)
    assert homology(X, 0).betti == 3
    assert conjugacy_class_count(s3) == 3
    assert connected_components(X) == 3

def test_boundary_squares_to_zero(z3):
    assert ChainComplex(cyclic_bar(z3, 4)).check_boundary_squared() == []

def test_degree_above_truncation(circle4):
    with pytest.raises(TruncationError):
        homology(circle4, 4)

def test_homology_group_str():
    assert str(HomologyGroup(0, (2,))) == 'Z/2'
    assert str(HomologyGroup(2, ())) == 'Z^2'
    assert str(HomologyGroup(1, (2, 4))) == 'Z + Z/2 + Z/4'
    assert str(HomologyGroup(0, ())) == '0'
