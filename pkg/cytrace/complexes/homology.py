import logging
from typing import List, NamedTuple, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _connected_components
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from cytrace.common.errors import TruncationError
from cytrace.complexes.simplicial import nondegenerate

logger = logging.getLogger(__name__)

class HomologyGroup(NamedTuple):
    betti: int
    torsion: Tuple[int, ...]

    def __str__(self):
        parts = ['Z'] * (1 if self.betti == 1 else 0)
        if self.betti > 1:
            parts = [f'Z^{self.betti}']
        parts += [f'Z/{d}' for d in self.torsion]
        return ' + '.join(parts) if parts else '0'

def smith_normal_form(matrix):
    """
    The nonzero invariant factors of an integer matrix, in divisibility order.
    The zero matrix (and any empty matrix) gives ().

    Args:
        - matrix (array-like of int): any shape, entries are read as Python ints
    Output:
        - factors (tuple of int): positive d_1 | d_2 | ...
    """
    rows = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object).tolist()] if len(matrix) else []
    if not rows or not rows[0]:
        return ()
    shape = (len(rows), len(rows[0]))
    if all(v == 0 for row in rows for v in row):
        return ()
    dM = DomainMatrix([[ZZ(v) for v in row] for row in rows], shape, ZZ)
    # sympy returns d_1 | d_2 | ... ; keep the nonzero ones, up to sign
    return tuple(abs(int(d)) for d in invariant_factors(dM) if d != 0)

class ChainComplex:
    """
    The normalized chain complex of a simplicial set: in degree k, the free abelian
    group on the nondegenerate k-simplices, with boundary the alternating sum of faces,
    dropping faces that land on degenerate simplices.
    """
    def __init__(self, X):
        self.complex = X
        self.truncation = X.truncation
        self._basis = [nondegenerate(X, k) for k in range(X.truncation + 1)]
        self._boundaries = {}

    def basis(self, k):
        return self._basis[k]

    def rank(self, k):
        return len(self._basis[k])

    def boundary(self, k):
        """
        The matrix of the boundary C_k -> C_{k-1}, with rows indexed by C_{k-1}.
        """
        if k in self._boundaries:
            return self._boundaries[k]
        if k == 0:
            D = np.zeros((0, self.rank(0)), dtype=np.int64)
        else:
            X = self.complex
            position = np.full(X.counts[k-1], -1, dtype=np.int64)
            position[self._basis[k-1]] = np.arange(self.rank(k-1))
            D = np.zeros((self.rank(k-1), self.rank(k)), dtype=np.int64)
            columns = np.arange(self.rank(k))
            for i in range(k + 1):
                rows = position[X.face(k, i)[self._basis[k]]]
                keep = rows >= 0
                np.add.at(D, (rows[keep], columns[keep]), (-1) ** i)
        self._boundaries[k] = D
        return D

    def check_boundary_squared(self):
        """
        Degrees k for which the boundary of the boundary is nonzero.
        """
        bad = []
        for k in range(2, self.truncation + 1):
            if np.any(self.boundary(k-1) @ self.boundary(k)):
                bad.append(k)
        return bad

def chain_complex(X):
    return ChainComplex(X)

def _rank_and_factors(D):
    factors = smith_normal_form(D) if D.size else ()
    return len(factors), tuple(d for d in factors if d > 1)

def homology(X, k, chains=None):
    """
    Integral homology H_k of the normalized chain complex of X.

    Args:
        - X (SimplicialSet): truncated at N, with k <= N-1
        - k (int)
    Output:
        - group (HomologyGroup): (betti number, torsion coefficients > 1)
    """
    if k < 0:
        raise ValueError('Homology degree must be non-negative')
    if k >= X.truncation:
        raise TruncationError(
            f'H_{k} needs simplices of degree {k+1}, but the complex is truncated at {X.truncation}')
    chains = chains or ChainComplex(X)
    for bad in chains.check_boundary_squared():
        if bad <= k + 1:
            raise AssertionError(f'The boundary squares to a nonzero map in degree {bad}')
    rank_in, _ = _rank_and_factors(chains.boundary(k))
    rank_out, torsion = _rank_and_factors(chains.boundary(k + 1))
    betti = chains.rank(k) - rank_in - rank_out
    return HomologyGroup(betti=betti, torsion=torsion)

def homology_through(X, K):
    """
    H_0, ..., H_K, sharing one chain complex.
    """
    chains = ChainComplex(X)
    return [homology(X, k, chains=chains) for k in range(K + 1)]

def connected_components(X):
    """
    Number of path components, from the vertices and edges alone.
    """
    n = X.counts[0]
    if n == 0:
        return 0
    if X.truncation < 1 or X.counts[1] == 0:
        return n
    src, dst = X.face(1, 1), X.face(1, 0)
    graph = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    n_components, _ = _connected_components(graph, directed=False)
    return int(n_components)
