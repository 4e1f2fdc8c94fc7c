import pytest
from sympy import GF, QQ, ZZ

from cytrace.common.errors import ResidualError, SchemaError, UsageError
from cytrace.common.rings import IntegerRing, ModularRing, RationalField, get_ring
from cytrace.common.utils import truncation_set
from cytrace.suites.witt_ring_suite import misordered_restriction
from cytrace.witt.witt_vector import (
    WittVector, check_index_diagram, frobenius_witt, from_series, ghost, one, quotient_set, random_witt,
    restrict_witt, teichmuller, to_series, verschiebung_witt, witt_add, witt_mul, witt_neg, witt_sub, zero)

FOUR = (1, 2, 4)

def test_rings():
    assert isinstance(get_ring('z:0'), IntegerRing)
    assert isinstance(get_ring('q'), RationalField)
    z4 = get_ring('z:4')
    assert isinstance(z4, ModularRing)
    assert z4.normalize(-1) == 3
    assert z4.is_unit(3) and not z4.is_unit(2)
    assert get_ring('q').normalize(QQ(4, 2)) == 2
    for tag in ['z:1', 'z:x', 'r', 'z:-3']:
        with pytest.raises(SchemaError):
            get_ring(tag)

def test_rings_compute_in_sympy_domains():
    assert get_ring('z:0').domain == ZZ
    assert get_ring('q').domain == QQ
    # prime moduli use the field, composite ones reduce integers
    assert get_ring('z:5').domain == GF(5)
    assert get_ring('z:6').domain == ZZ
    z6 = get_ring('z:6')
    assert z6.mul(4, 5) == 2 and z6.add(5, 5) == 4 and z6.neg(1) == 5
    assert get_ring('z:5').pow(2, 4) == 1
    q = get_ring('q')
    assert q.parse('3/4') == QQ(3, 4)
    assert q.serialize(q.mul(q.parse('3/4'), q.parse('2/3'))) == '1/2'
    assert q.serialize(q.add(QQ(1, 2), QQ(1, 2))) == 1
    assert q.is_unit(QQ(1, 3)) and not q.is_unit(0)

def test_parse_rejects_floats():
    with pytest.raises(SchemaError):
        get_ring('z:0').parse(0.5)
    with pytest.raises(SchemaError):
        get_ring('z:4').parse('1/2')
    assert get_ring('z:5').parse('1/2') == 3

def test_truncation_set_must_be_divisor_closed():
    with pytest.raises(UsageError):
        WittVector('z:0', (1, 3, 6), [0, 0, 0])
    with pytest.raises(SchemaError):
        WittVector('z:0', FOUR, [0, 1])

def test_square_over_integers():
    x = WittVector('z:0', FOUR, [0, 1, 0])
    assert witt_mul(x, x).coords == (0, 2, -1)
    assert ghost(x) == (0, 2, 2)

def test_square_modulo_five():
    x = WittVector('z:5', FOUR, [0, 1, 0])
    assert witt_mul(x, x).coords == (0, 2, 4)

def test_addition():
    x = WittVector('z:0', (1, 2), [1, 0])
    assert witt_add(x, x).coords == (2, -1)
    assert witt_sub(x, x) == zero('z:0', (1, 2))
    assert witt_add(x, witt_neg(x)) == zero('z:0', (1, 2))

def test_operators_dispatch():
    x = WittVector('z:0', (1, 2), [1, 0])
    assert x + x == witt_add(x, x)
    assert -x == witt_neg(x)
    assert x * one('z:0', (1, 2)) == x

def test_mismatched_vectors():
    with pytest.raises(UsageError):
        witt_add(zero('z:0', FOUR), zero('z:3', FOUR))
    with pytest.raises(UsageError):
        witt_add(zero('z:0', FOUR), zero('z:0', (1, 2)))

def test_series_dictionary():
    assert from_series([1, -2, 1], (1, 2)).coords == (2, -1)
    assert to_series(WittVector('z:0', (1, 2), [2, -1])) == [1, -2, 1]
    with pytest.raises(ResidualError) as info:
        from_series([1, 0, 1], (1, 3))
    assert (info.value.exponent, info.value.coefficient) == (2, 1)
    with pytest.raises(SchemaError):
        from_series([2, 1], (1,))

def test_teichmuller_is_multiplicative():
    S = truncation_set(6)
    assert witt_mul(teichmuller(2, 'z:0', S), teichmuller(3, 'z:0', S)) == teichmuller(6, 'z:0', S)
    assert ghost(teichmuller(QQ(1, 2), 'q', FOUR)) == (QQ(1, 2), QQ(1, 4), QQ(1, 16))

def test_frobenius():
    x = WittVector('z:0', FOUR, [0, 1, 0])
    assert frobenius_witt(x, 2).coords == (2, -1)
    assert frobenius_witt(x, 1) == x
    assert quotient_set(truncation_set(12), 3) == (1, 2, 4)

def test_verschiebung():
    u = WittVector('z:0', (1, 2), [1, 0])
    v = verschiebung_witt(u, 2, FOUR)
    assert v.coords == (0, 1, 0)
    assert frobenius_witt(v, 2) == witt_add(u, u)
    with pytest.raises(UsageError):
        verschiebung_witt(u, 3, FOUR)

def test_restriction():
    x = WittVector('z:0', truncation_set(6), [1, 2, 3, 4])
    assert restrict_witt(x, (1, 3)).coords == (1, 3)
    with pytest.raises(UsageError):
        restrict_witt(x, (1, 4))
    with pytest.raises(UsageError):
        restrict_witt(x, (3,))

@pytest.mark.parametrize('tag', ['z:0', 'z:4', 'z:6'])
def test_ring_axioms_on_random_vectors(tag, rng):
    S = truncation_set(12)
    for _ in range(5):
        x, y, z = (random_witt(tag, S, rng) for _ in range(3))
        assert witt_add(witt_add(x, y), z) == witt_add(x, witt_add(y, z))
        assert witt_mul(x, y) == witt_mul(y, x)
        assert witt_mul(x, witt_add(y, z)) == witt_add(witt_mul(x, y), witt_mul(x, z))

def test_ghost_is_additive(rng):
    ring = get_ring('z:0')
    S = truncation_set(8)
    x, y = random_witt(ring, S, rng), random_witt(ring, S, rng)
    assert ghost(witt_add(x, y)) == tuple(a + b for a, b in zip(ghost(x), ghost(y)))

def test_json_form():
    x = WittVector('q', (1, 2), [QQ(1, 2), 3])
    payload = x.to_json()
    assert payload == {'kind': 'witt', 'ring': 'q', 'S': [1, 2], 'coords': ['1/2', 3]}
    assert WittVector.from_json(payload) == x
    with pytest.raises(SchemaError):
        WittVector.from_json({'kind': 'witt', 'ring': 'q'})

def test_index_diagram():
    n_cases, violations = check_index_diagram('z:0', 12, 50, seed=0)
    assert n_cases >= 50
    assert violations == []

def test_misordered_restriction_is_detected():
    _, violations = check_index_diagram('z:0', 12, 100, seed=0, restriction=misordered_restriction)
    assert violations
