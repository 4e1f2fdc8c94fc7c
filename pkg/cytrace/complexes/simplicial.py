import logging

import numpy as np

from cytrace.common.checks.check import Violation
from cytrace.common.errors import SchemaError, TruncationError
from cytrace.common.utils import first_mismatches, permutation_power

logger = logging.getLogger(__name__)

def _as_table(values, name):
    arr = np.asarray(values, dtype=np.int64)
    if arr.ndim != 1:
        raise SchemaError(f'{name} must be a flat list of simplex indices')
    return arr

class SimplicialSet:
    """
    A degreewise-finite simplicial set, truncated at degree N.
    The simplices of degree k are the integers 0..counts[k]-1, and the operators
    are stored as index tables: faces[k][i][x] is d_i of the k-simplex x.

    Args:
        - counts (list of int): number of simplices in degrees 0..N
        - faces (list): faces[k] is a list of k+1 tables for k >= 1 (faces[0] is empty)
        - degeneracies (list): degeneracies[k] is a list of k+1 tables mapping degree k to k+1, for k < N
        - labels (list, optional): labels[k][x] is a hashable description of the k-simplex x
        - name (str, optional)
    """
    def __init__(self, counts, faces, degeneracies, labels=None, name=None):
        self._counts = [int(c) for c in counts]
        self._faces = [[_as_table(m, f'faces[{k}][{i}]') for i, m in enumerate(level)]
                       for k, level in enumerate(faces)]
        self._degeneracies = [[_as_table(m, f'degeneracies[{k}][{i}]') for i, m in enumerate(level)]
                              for k, level in enumerate(degeneracies)]
        self._labels = [list(level) for level in labels] if labels is not None else None
        self._name = name
        self._label_index = None
        self.check_init()

    def check_init(self):
        N = self.truncation
        if N < 0:
            raise SchemaError('A simplicial set needs at least degree 0')
        if any(c < 0 for c in self._counts):
            raise SchemaError('Simplex counts must be non-negative')
        if len(self._faces) != N + 1 or len(self._faces[0]) != 0:
            raise SchemaError(f'Expected face tables for degrees 1..{N} (and none in degree 0)')
        if len(self._degeneracies) != N:
            raise SchemaError(f'Expected degeneracy tables for degrees 0..{N-1}')
        for k in range(1, N + 1):
            if len(self._faces[k]) != k + 1:
                raise SchemaError(f'Degree {k} needs {k+1} face maps, got {len(self._faces[k])}')
            for i, table in enumerate(self._faces[k]):
                self._check_table(table, self._counts[k], self._counts[k-1], f'd_{i} on degree {k}')
        for k in range(N):
            if len(self._degeneracies[k]) != k + 1:
                raise SchemaError(f'Degree {k} needs {k+1} degeneracy maps, got {len(self._degeneracies[k])}')
            for i, table in enumerate(self._degeneracies[k]):
                self._check_table(table, self._counts[k], self._counts[k+1], f's_{i} on degree {k}')
        if self._labels is not None:
            if len(self._labels) != N + 1 or any(len(l) != c for l, c in zip(self._labels, self._counts)):
                raise SchemaError('labels must list one entry per simplex in every degree')

    @staticmethod
    def _check_table(table, n_source, n_target, what):
        if len(table) != n_source:
            raise SchemaError(f'{what} is not total: {len(table)} entries for {n_source} simplices')
        if len(table) and (table.min() < 0 or table.max() >= n_target):
            bad = int(np.nonzero((table < 0) | (table >= n_target))[0][0])
            raise SchemaError(f'{what} sends simplex {bad} to {int(table[bad])}, out of range 0..{n_target-1}')

    @property
    def truncation(self):
        return len(self._counts) - 1

    @property
    def counts(self):
        return list(self._counts)

    @property
    def name(self):
        return self._name

    @property
    def labels(self):
        return self._labels

    @property
    def is_cyclic(self):
        return False

    def face(self, k, i):
        """
        The table of d_i: X_k -> X_{k-1}.
        """
        if k > self.truncation:
            raise TruncationError(f'Degree {k} is above the truncation {self.truncation}')
        return self._faces[k][i]

    def degeneracy(self, k, i):
        """
        The table of s_i: X_k -> X_{k+1}.
        """
        if k + 1 > self.truncation:
            raise TruncationError(f'Degree {k+1} is above the truncation {self.truncation}')
        return self._degeneracies[k][i]

    def label(self, k, x):
        if self._labels is None:
            return x
        return self._labels[k][x]

    def index_of(self, k, label):
        """
        The index of the k-simplex carrying the given label.
        """
        if self._labels is None:
            return int(label)
        if self._label_index is None:
            self._label_index = [{l: x for x, l in enumerate(level)} for level in self._labels]
        try:
            return self._label_index[k][label]
        except KeyError:
            raise KeyError(f'No {k}-simplex labelled {label!r}')

    def truncate(self, N):
        """
        The same simplicial set with everything above degree N dropped.
        """
        if N > self.truncation:
            raise TruncationError(f'Cannot truncate at {N} above the current truncation {self.truncation}')
        return SimplicialSet(
            counts=self._counts[:N+1],
            faces=self._faces[:N+1],
            degeneracies=self._degeneracies[:N],
            labels=self._labels[:N+1] if self._labels is not None else None,
            name=self._name)

    def __repr__(self):
        name = f'{self._name!r}, ' if self._name else ''
        return f'{type(self).__name__}({name}counts={self._counts})'

class CyclicSet(SimplicialSet):
    """
    A simplicial set with cyclic operators t_k: X_k -> X_k.
    With multiplicity r the operators satisfy t_k^{r(k+1)} = id instead of
    t_k^{k+1} = id; edgewise subdivisions of cyclic sets have multiplicity r.

    Args:
        - cyclic (list): cyclic[k] is the table of t_k for k = 0..N
        - multiplicity (int): r as above, 1 for ordinary cyclic sets
        - other args as in SimplicialSet
    """
    def __init__(self, counts, faces, degeneracies, cyclic, labels=None, name=None, multiplicity=1):
        self._cyclic = [_as_table(m, f'cyclic[{k}]') for k, m in enumerate(cyclic)]
        self._multiplicity = int(multiplicity)
        super().__init__(counts, faces, degeneracies, labels=labels, name=name)

    def check_init(self):
        super().check_init()
        if self._multiplicity < 1:
            raise SchemaError('multiplicity must be a positive integer')
        if len(self._cyclic) != self.truncation + 1:
            raise SchemaError(f'Expected cyclic operators for degrees 0..{self.truncation}')
        for k, table in enumerate(self._cyclic):
            self._check_table(table, self._counts[k], self._counts[k], f't on degree {k}')

    @property
    def is_cyclic(self):
        return True

    @property
    def multiplicity(self):
        return self._multiplicity

    def t(self, k):
        if k > self.truncation:
            raise TruncationError(f'Degree {k} is above the truncation {self.truncation}')
        return self._cyclic[k]

    def truncate(self, N):
        base = super().truncate(N)
        return CyclicSet(
            counts=base.counts, faces=base._faces, degeneracies=base._degeneracies,
            cyclic=self._cyclic[:N+1], labels=base.labels, name=self._name,
            multiplicity=self._multiplicity)

class SimplicialMap:
    """
    A simplicial map given degreewise, through degree len(maps)-1, which may be
    below the truncation of either end.

    Args:
        - source (SimplicialSet)
        - target (SimplicialSet)
        - maps (list): maps[k][x] is the image of the k-simplex x
        - cyclic (bool): whether the map is claimed to commute with the cyclic operators
        - name (str, optional)
    """
    def __init__(self, source, target, maps, cyclic=False, name=None):
        self.source = source
        self.target = target
        self._maps = [_as_table(m, f'maps[{k}]') for k, m in enumerate(maps)]
        self.cyclic = cyclic
        self.name = name
        self.check_init()

    def check_init(self):
        if self.truncation > min(self.source.truncation, self.target.truncation):
            raise SchemaError('A simplicial map cannot reach above the truncation of its source or target')
        for k, table in enumerate(self._maps):
            SimplicialSet._check_table(
                table, self.source.counts[k], self.target.counts[k], f'map on degree {k}')
        if self.cyclic and not (self.source.is_cyclic and self.target.is_cyclic):
            raise SchemaError('A cyclic map needs cyclic source and target')

    @property
    def truncation(self):
        return len(self._maps) - 1

    def __getitem__(self, k):
        return self._maps[k]

    def __call__(self, k, x):
        return int(self._maps[k][x])

def compose_maps(g, f, name=None):
    """
    g after f, defined through the lower of the two truncations.
    """
    if f.target is not g.source and f.target.counts[:g.truncation+1] != g.source.counts[:g.truncation+1]:
        raise SchemaError('compose_maps: the target of f is not the source of g')
    N = min(f.truncation, g.truncation)
    return SimplicialMap(
        f.source, g.target, [g[k][f[k]] for k in range(N + 1)],
        cyclic=f.cyclic and g.cyclic, name=name)

def identity_map(X):
    return SimplicialMap(
        X, X, [np.arange(c, dtype=np.int64) for c in X.counts], cyclic=X.is_cyclic, name='id')

def _compare(violations, identity, degree, lhs, rhs):
    bad = first_mismatches(lhs, rhs)
    if len(bad):
        violations.append(Violation(identity=identity, degree=degree, witness=int(bad[0]), count=len(bad)))

def validate(X):
    """
    Checks every simplicial identity (and the cyclic relations, for cyclic sets)
    available within the truncation.

    Args:
        - X (SimplicialSet or CyclicSet)
    Output:
        - violations (list of Violation): empty iff X is a valid (cyclic) simplicial set
    """
    violations = []
    N = X.truncation
    # d_i d_j = d_{j-1} d_i for i < j
    for k in range(2, N + 1):
        for j in range(1, k + 1):
            for i in range(j):
                _compare(violations, f'd_{i} d_{j} = d_{j-1} d_{i}', k,
                         X.face(k-1, i)[X.face(k, j)], X.face(k-1, j-1)[X.face(k, i)])
    # s_i s_j = s_{j+1} s_i for i <= j
    for k in range(N - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                _compare(violations, f's_{i} s_{j} = s_{j+1} s_{i}', k,
                         X.degeneracy(k+1, i)[X.degeneracy(k, j)],
                         X.degeneracy(k+1, j+1)[X.degeneracy(k, i)])
    for k in range(N):
        ident = np.arange(X.counts[k], dtype=np.int64)
        for j in range(k + 1):
            s_j = X.degeneracy(k, j)
            for i in range(k + 2):
                lhs = X.face(k+1, i)[s_j]
                if i < j:
                    _compare(violations, f'd_{i} s_{j} = s_{j-1} d_{i}', k,
                             lhs, X.degeneracy(k-1, j-1)[X.face(k, i)])
                elif i in (j, j + 1):
                    _compare(violations, f'd_{i} s_{j} = id', k, lhs, ident)
                else:
                    _compare(violations, f'd_{i} s_{j} = s_{j} d_{i-1}', k,
                             lhs, X.degeneracy(k-1, j)[X.face(k, i-1)])
    if X.is_cyclic:
        violations.extend(_validate_cyclic(X))
    if violations:
        logger.debug('%s: %d identity violations', X.name or 'complex', len(violations))
    return violations

def _validate_cyclic(X):
    violations = []
    N = X.truncation
    r = X.multiplicity
    for k in range(N + 1):
        t = X.t(k)
        ident = np.arange(X.counts[k], dtype=np.int64)
        if len(np.unique(t)) != len(t):
            values, first, counts = np.unique(t, return_index=True, return_counts=True)
            violations.append(Violation(identity='t bijective', degree=k,
                                        witness=int(first[np.nonzero(counts > 1)[0][0]])))
            continue
        order = 'k+1' if r == 1 else f'{r}(k+1)'
        _compare(violations, f't^({order}) = id', k, permutation_power(t, r * (k + 1)), ident)
    for k in range(1, N + 1):
        t = X.t(k)
        _compare(violations, 'd_0 t = d_k', k, X.face(k, 0)[t], X.face(k, k))
        for i in range(1, k + 1):
            _compare(violations, f'd_{i} t = t d_{i-1}', k, X.face(k, i)[t], X.t(k-1)[X.face(k, i-1)])
    for k in range(N):
        t = X.t(k)
        t_up = X.t(k+1)
        _compare(violations, 's_0 t = t^2 s_k', k, X.degeneracy(k, 0)[t], t_up[t_up[X.degeneracy(k, k)]])
        for i in range(1, k + 1):
            _compare(violations, f's_{i} t = t s_{i-1}', k,
                     X.degeneracy(k, i)[t], t_up[X.degeneracy(k, i-1)])
    return violations

def validate_map(f):
    """
    Checks that f commutes with every face and degeneracy (and with t, if f is
    claimed cyclic) through its truncation.
    """
    violations = []
    X, Y = f.source, f.target
    for k in range(1, f.truncation + 1):
        for i in range(k + 1):
            _compare(violations, f'f d_{i} = d_{i} f', k, f[k-1][X.face(k, i)], Y.face(k, i)[f[k]])
    for k in range(f.truncation):
        for i in range(k + 1):
            _compare(violations, f'f s_{i} = s_{i} f', k,
                     f[k+1][X.degeneracy(k, i)], Y.degeneracy(k, i)[f[k]])
    if f.cyclic:
        for k in range(f.truncation + 1):
            _compare(violations, 'f t = t f', k, f[k][X.t(k)], Y.t(k)[f[k]])
    return violations

def is_monotone(f, n):
    return all(0 <= v <= n for v in f) and all(a <= b for a, b in zip(f, f[1:]))

def monotone_table(X, f, n):
    """
    The table of X(f): X_n -> X_m for a monotone f: [m] -> [n], given as the
    tuple (f(0), ..., f(m)). f is split into a surjection followed by an
    injection, so X(f) is a string of degeneracies after a string of faces.
    """
    f = tuple(int(v) for v in f)
    m = len(f) - 1
    if m < 0 or not is_monotone(f, n):
        raise ValueError(f'{f} is not a monotone map [{m}] -> [{n}]')
    if max(n, m) > X.truncation:
        raise TruncationError(f'X({f}) needs degree {max(n, m)}, above the truncation {X.truncation}')
    image = sorted(set(f))
    idx = np.arange(X.counts[n], dtype=np.int64)
    degree = n
    # faces at the missing values, from the top down
    for j in sorted(set(range(n + 1)) - set(image), reverse=True):
        idx = X.face(degree, j)[idx]
        degree -= 1
    rank = {v: p for p, v in enumerate(image)}
    rho = [rank[v] for v in f]
    for l in range(m):
        if rho[l] == rho[l+1]:
            idx = X.degeneracy(degree, l)[idx]
            degree += 1
    assert degree == m
    return idx

def apply_monotone(X, f, sigma):
    """
    Args:
        - X (SimplicialSet)
        - f (tuple of int): a monotone map [m] -> [n], as (f(0), ..., f(m))
        - sigma (tuple): the simplex (n, index)
    Output:
        - image (tuple): the simplex (m, index) = X(f)(sigma)
    """
    n, x = sigma
    if not 0 <= x < X.counts[n]:
        raise SchemaError(f'No {n}-simplex with index {x}')
    return len(f) - 1, int(monotone_table(X, f, n)[x])

def degenerate_mask(X, k):
    """
    Boolean array marking the degenerate k-simplices.
    """
    mask = np.zeros(X.counts[k], dtype=bool)
    if k == 0:
        return mask
    for i in range(k):
        mask[X.degeneracy(k-1, i)] = True
    return mask

def nondegenerate(X, k):
    """
    Indices of the nondegenerate k-simplices, in increasing order.
    """
    return np.nonzero(~degenerate_mask(X, k))[0]

def eilenberg_zilber(X, sigma):
    """
    Writes sigma = s_{j_r} ... s_{j_1} y with y nondegenerate and j_r > ... > j_1.

    Args:
        - sigma (tuple): the simplex (k, index)
    Output:
        - y (tuple): the nondegenerate simplex (k - r, index)
        - word (tuple): (j_r, ..., j_1)
    """
    k, x = sigma
    word = []
    while k > 0:
        for i in range(k - 1, -1, -1):
            y = int(X.face(k, i)[x])
            if int(X.degeneracy(k-1, i)[y]) == x:
                word.append(i)
                x, k = y, k - 1
                break
        else:
            break
    return (k, x), tuple(word)
