import logging
from typing import NamedTuple

import numpy as np

from cytrace.common.checks.check import Violation
from cytrace.common.errors import SchemaError, TruncationError, UsageError
from cytrace.complexes.simplicial import (
    CyclicSet, SimplicialMap, SimplicialSet, compose_maps, validate_map)
from cytrace.complexes.subdivision import dbar_map, edgewise_subdivide, fixed_subcomplex

logger = logging.getLogger(__name__)

def _chains(C, N):
    """
    Composable strings (f_1, ..., f_k) with f_{i+1}: c_{i+1} -> c_i, for k = 0..N.
    Degree 0 holds the objects as 1-tuples (a,).
    """
    chains = [[(a,) for a in range(C.n_objects)]]
    into = {}
    for g in range(C.n_morphisms):
        into.setdefault(C.dst(g), []).append(g)
    for k in range(1, N + 1):
        level = []
        for chain in chains[-1]:
            last = chain[0] if k == 1 else C.src(chain[-1])
            prefix = () if k == 1 else chain
            level.extend(prefix + (g,) for g in into.get(last, []))
        chains.append(level)
    return chains

def _index(labels):
    return {l: x for x, l in enumerate(labels)}

def nerve(C, N):
    """
    The nerve of C, truncated at N. A k-simplex is a chain (f_1, ..., f_k) of morphism
    indices with f_{i+1}: c_{i+1} -> c_i; a 0-simplex is (a,) for an object a.
    """
    if N < 0:
        raise UsageError('The truncation degree must be non-negative')
    labels = [sorted(level) for level in _chains(C, N)]
    index = [_index(level) for level in labels]

    def face(k, i, ch):
        if k == 1:
            return index[0][(C.src(ch[0]),) if i == 0 else (C.dst(ch[0]),)]
        if i == 0:
            return index[k-1][ch[1:]]
        if i == k:
            return index[k-1][ch[:-1]]
        return index[k-1][ch[:i-1] + (C.compose(ch[i-1], ch[i]),) + ch[i+1:]]

    def degeneracy(k, i, ch):
        if k == 0:
            return index[1][(C.identity(ch[0]),)]
        c_i = C.dst(ch[0]) if i == 0 else C.src(ch[i-1])
        return index[k+1][ch[:i] + (C.identity(c_i),) + ch[i:]]

    faces = [[]] + [[[face(k, i, ch) for ch in labels[k]] for i in range(k + 1)] for k in range(1, N + 1)]
    degeneracies = [[[degeneracy(k, i, ch) for ch in labels[k]] for i in range(k + 1)] for k in range(N)]
    return SimplicialSet([len(level) for level in labels], faces, degeneracies, labels=labels,
                         name=f'N({C.name})')

def cyclic_bar(C, N):
    """
    The cyclic bar construction of C, truncated at N. A k-simplex is
    (f_0, ..., f_k) with f_0: c_0 -> c_k and f_i: c_i -> c_{i-1} for i >= 1.
    d_i composes f_i o f_{i+1} for i < k, d_k composes f_k o f_0 into the first slot,
    s_i inserts id_{c_i} after position i and t moves f_k to the front.
    """
    if N < 0:
        raise UsageError('The truncation degree must be non-negative')
    labels = []
    for k, level in enumerate(_chains(C, N)):
        simplices = []
        for chain in level:
            c_0 = chain[0] if k == 0 else C.dst(chain[0])
            c_k = chain[0] if k == 0 else C.src(chain[-1])
            rest = () if k == 0 else chain
            simplices.extend((f_0,) + rest for f_0 in C.hom(c_0, c_k))
        labels.append(sorted(simplices))
    index = [_index(level) for level in labels]

    def face(k, i, f):
        if i < k:
            return index[k-1][f[:i] + (C.compose(f[i], f[i+1]),) + f[i+2:]]
        return index[k-1][(C.compose(f[k], f[0]),) + f[1:k]]

    def degeneracy(k, i, f):
        return index[k+1][f[:i+1] + (C.identity(C.src(f[i])),) + f[i+1:]]

    faces = [[]] + [[[face(k, i, f) for f in labels[k]] for i in range(k + 1)] for k in range(1, N + 1)]
    degeneracies = [[[degeneracy(k, i, f) for f in labels[k]] for i in range(k + 1)] for k in range(N)]
    cyclic = [[index[k][f[-1:] + f[:-1]] for f in labels[k]] for k in range(N + 1)]
    logger.debug('Cyclic bar of %s: counts %s', C.name, [len(l) for l in labels])
    return CyclicSet([len(level) for level in labels], faces, degeneracies, cyclic, labels=labels,
                     name=f'Bcy({C.name})')

def project_to_nerve(C, N, X=None, nerve_complex=None):
    """
    The map B^cy(C) -> N(C) forgetting f_0.
    """
    X = X or cyclic_bar(C, N)
    Y = nerve_complex or nerve(C, N)
    maps = []
    for k in range(N + 1):
        if k == 0:
            maps.append([Y.index_of(0, (C.src(f[0]),)) for f in X.labels[0]])
        else:
            maps.append([Y.index_of(k, f[1:]) for f in X.labels[k]])
    return SimplicialMap(X, Y, maps, name='projection')

class DiagonalRestriction(NamedTuple):
    delta: SimplicialMap
    restriction: SimplicialMap
    fixed: SimplicialSet
    inclusion: SimplicialMap
    subdivided: object

def diagonal_restriction(C, r, N, X=None):
    """
    The mutually inverse maps between B^cy(C) and the C_r-fixed part of its r-fold
    subdivision: delta repeats a k-simplex r times, restriction reads the first block.
    Both are defined through degree floor((N+1)/r) - 1.
    """
    if r < 1:
        raise UsageError(f'r must be a positive integer, got {r}')
    X = X or cyclic_bar(C, N)
    subdivided = edgewise_subdivide(X, r)
    fixed, inclusion = fixed_subcomplex(subdivided)
    M = subdivided.truncation
    delta, restriction = [], []
    for k in range(M + 1):
        try:
            delta.append([fixed.index_of(k, f * r) for f in X.labels[k]])
        except KeyError as e:
            raise SchemaError(f'The r-fold repetition of a simplex is not fixed: {e}')
        restriction.append([X.index_of(k, f[:k+1]) for f in fixed.labels[k]])
    return DiagonalRestriction(
        delta=SimplicialMap(X, fixed, delta, cyclic=True, name=f'Delta_{r}'),
        restriction=SimplicialMap(fixed, X, restriction, cyclic=True, name=f'R_{r}'),
        fixed=fixed, inclusion=inclusion, subdivided=subdivided)

def frobenius_bar(C, r, N, X=None):
    """
    The operator Fbar_r = dbar o inclusion o Delta_r on B^cy(C), through degree
    floor((N+1)/r) - 1.
    """
    X = X or cyclic_bar(C, N)
    if (N + 1) // r - 1 < 0:
        raise TruncationError(f'Fbar_{r} needs the cyclic bar through degree {r-1}')
    dr = diagonal_restriction(C, r, N, X=X)
    dbar = dbar_map(X, r, subdivided=dr.subdivided)
    return compose_maps(dbar, compose_maps(dr.inclusion, dr.delta), name=f'Fbar_{r}')

def one_sided_bar(G, N):
    """
    B(G, G, *) for a monoid G, truncated at N: k-simplices (g_0, ..., g_k), with
    d_i multiplying g_i g_{i+1} for i < k, d_k dropping g_k and s_i inserting the unit
    after position i.
    """
    if G.n_objects != 1:
        raise UsageError('one_sided_bar expects a monoid (a one-object category)')
    n = G.n_morphisms
    unit = G.identity(0)
    labels = [[()]]
    for k in range(N + 1):
        labels.append(sorted(f + (g,) for f in labels[-1] for g in range(n)))
    labels = labels[1:]
    index = [_index(level) for level in labels]

    def face(k, i, f):
        if i == k:
            return index[k-1][f[:-1]]
        return index[k-1][f[:i] + (G.compose(f[i], f[i+1]),) + f[i+2:]]

    def degeneracy(k, i, f):
        return index[k+1][f[:i+1] + (unit,) + f[i+1:]]

    faces = [[]] + [[[face(k, i, f) for f in labels[k]] for i in range(k + 1)] for k in range(1, N + 1)]
    degeneracies = [[[degeneracy(k, i, f) for f in labels[k]] for i in range(k + 1)] for k in range(N)]
    return SimplicialSet([len(level) for level in labels], faces, degeneracies, labels=labels,
                         name=f'B({G.name},{G.name},*)')

def product_complex(X, Y):
    """
    Degreewise product; the k-simplex (x, y) has index x * |Y_k| + y.
    """
    N = min(X.truncation, Y.truncation)
    counts = [X.counts[k] * Y.counts[k] for k in range(N + 1)]

    def pair(table_x, table_y, n_y_target):
        return (table_x[:, None] * n_y_target + table_y[None, :]).ravel()

    faces = [[]] + [[pair(X.face(k, i), Y.face(k, i), Y.counts[k-1]) for i in range(k + 1)]
                    for k in range(1, N + 1)]
    degeneracies = [[pair(X.degeneracy(k, i), Y.degeneracy(k, i), Y.counts[k+1]) for i in range(k + 1)]
                    for k in range(N)]
    labels = None
    if X.labels is not None and Y.labels is not None:
        labels = [[(a, b) for a in X.labels[k] for b in Y.labels[k]] for k in range(N + 1)]
    return SimplicialSet(counts, faces, degeneracies, labels=labels, name=f'{X.name} x {Y.name}')

def semidirect_theta(G, H, action, product, N):
    """
    The map B(G,G,*) x B(H,H,*) -> B(G x| H, G x| H, *) sending
    ((a_j), (b_j)) to ((a_j, b_j^(a_0 ... a_j))).

    Args:
        - G, H (FinCategory): monoids
        - action (2d array): action[a][b] is the index of b^a in H, a right action by automorphisms
        - product (FinCategory): the semidirect product, whose morphisms are labelled by pairs (a, b)
        - N (int): truncation
    Output:
        - theta (SimplicialMap)
        - violations (list of Violation): from validate_map
    """
    source = product_complex(one_sided_bar(G, N), one_sided_bar(H, N))
    target = one_sided_bar(product, N)
    pair_index = {product.morphisms[p]: p for p in range(product.n_morphisms)}
    maps = []
    for k in range(N + 1):
        table = []
        for a, b in source.labels[k]:
            prefix = G.identity(0)
            image = []
            for a_j, b_j in zip(a, b):
                prefix = G.compose(prefix, a_j)
                image.append(pair_index[(G.morphisms[a_j], H.morphisms[action[prefix][b_j]])])
            table.append(target.index_of(k, tuple(image)))
        maps.append(table)
    theta = SimplicialMap(source, target, maps, name='Theta')
    violations = validate_map(theta)
    for k in range(N + 1):
        if len(np.unique(theta[k])) != target.counts[k]:
            violations.append(Violation('Theta bijective', degree=k))
    return theta, violations
