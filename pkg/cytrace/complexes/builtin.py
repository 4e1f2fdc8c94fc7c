import itertools

import numpy as np

from cytrace.common.errors import UsageError
from cytrace.complexes.simplicial import CyclicSet, SimplicialSet

BASE = 'base'

def _surjections(k, n):
    """
    Monotone surjections [k] -> [n], as tuples, in lexicographic order.
    """
    if n > k:
        return []
    out = []
    # choose the n positions 1..k where the value steps up by one
    for steps in itertools.combinations(range(1, k + 1), n):
        values, v = [], 0
        steps = set(steps)
        for l in range(k + 1):
            if l in steps:
                v += 1
            values.append(v)
        out.append(tuple(values))
    return sorted(out)

def quotient_simplex(n, N, name=None):
    """
    The standard n-simplex with its boundary collapsed to a base point, truncated
    at degree N. A k-simplex is either the base point or a monotone surjection [k] -> [n].
    For n = 0 this is the point.
    """
    if n < 0 or N < 0:
        raise UsageError('quotient_simplex needs n >= 0 and N >= 0')
    if n == 0:
        return point(N)
    labels = [[BASE] + _surjections(k, n) for k in range(N + 1)]
    index = [{l: x for x, l in enumerate(level)} for level in labels]

    def face(k, i, label):
        if label == BASE:
            return 0
        image = label[:i] + label[i+1:]
        if len(set(image)) < n + 1:
            return 0
        return index[k-1][image]

    def degeneracy(k, i, label):
        if label == BASE:
            return 0
        return index[k+1][label[:i+1] + label[i:]]

    faces = [[]] + [[[face(k, i, l) for l in labels[k]] for i in range(k + 1)] for k in range(1, N + 1)]
    degeneracies = [[[degeneracy(k, i, l) for l in labels[k]] for i in range(k + 1)] for k in range(N)]
    return SimplicialSet(
        counts=[len(level) for level in labels], faces=faces, degeneracies=degeneracies,
        labels=labels, name=name or f'sphere{n}')

def point(N):
    """
    The one-point cyclic set, truncated at degree N.
    """
    ones = [np.zeros(1, dtype=np.int64)]
    return CyclicSet(
        counts=[1] * (N + 1),
        faces=[[]] + [ones * (k + 1) for k in range(1, N + 1)],
        degeneracies=[ones * (k + 1) for k in range(N)],
        cyclic=ones * (N + 1),
        labels=[[BASE] for _ in range(N + 1)],
        name='point')

def circle(N):
    """
    The circle with one vertex and one nondegenerate edge, truncated at degree N,
    with its cyclic structure. The non-base k-simplices are the surjections
    [k] -> [1]; the one stepping up at position j is rotated to the one
    stepping up at j+1, and the last one is rotated to the base point.
    """
    S = quotient_simplex(1, N, name='circle')

    def threshold(label):
        return 0 if label == BASE else label.index(1)

    cyclic = []
    for k in range(N + 1):
        table = []
        for label in S.labels[k]:
            j = (threshold(label) + 1) % (k + 1)
            target = BASE if j == 0 else tuple(0 if l < j else 1 for l in range(k + 1))
            table.append(S.index_of(k, target))
        cyclic.append(table)
    return CyclicSet(
        counts=S.counts, faces=S._faces, degeneracies=S._degeneracies, cyclic=cyclic,
        labels=S.labels, name='circle')

def sphere2(N):
    return quotient_simplex(2, N, name='sphere2')

BUILTINS = {
    'point': point,
    'circle': circle,
    'sphere2': sphere2,
}

def get_builtin(name, N):
    """
    Args:
        - name (str): one of 'point', 'circle', 'sphere2'
        - N (int): truncation degree
    """
    if name not in BUILTINS:
        raise UsageError(f'Builtin complex {name} not recognized. Must be one of {sorted(BUILTINS)}.')
    if N < 0:
        raise UsageError('The truncation degree must be non-negative')
    return BUILTINS[name](N)
