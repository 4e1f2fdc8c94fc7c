import itertools
import logging
from typing import NamedTuple, Tuple

import numpy as np
import sympy

from cytrace.common.checks.check import Violation
from cytrace.common.errors import TruncationError, UsageError
from cytrace.common.utils import first_mismatches, permutation_power
from cytrace.complexes.simplicial import CyclicSet, SimplicialMap, SimplicialSet, monotone_table

logger = logging.getLogger(__name__)

def concatenate_monotone(f, n, r):
    """
    The r-fold concatenation of a monotone f: [m] -> [n], a map [r(m+1)-1] -> [r(n+1)-1]
    sending b(m+1)+l to b(n+1)+f(l).
    """
    return tuple(b * (n + 1) + v for b in range(r) for v in f)

def coface(k, i):
    """
    delta_i: [k-1] -> [k], skipping i.
    """
    return tuple(l if l < i else l + 1 for l in range(k))

def codegeneracy(k, i):
    """
    sigma_i: [k+1] -> [k], hitting i twice.
    """
    return tuple(l if l <= i else l - 1 for l in range(k + 2))

class SubdividedComplex:
    """
    The r-fold edgewise subdivision of a simplicial set X: (sd_r X)_k = X_{r(k+1)-1}.

    Args:
        - original (SimplicialSet): X
        - r (int)
        - result (SimplicialSet or CyclicSet): sd_r X
        - cr_generator (list or None): per degree, the table of the generator of the
          cyclic group of order r acting on sd_r X, or None when X has no cyclic structure
    """
    def __init__(self, original, r, result, cr_generator):
        self.original = original
        self.r = r
        self.result = result
        self.cr_generator = cr_generator

    @property
    def truncation(self):
        return self.result.truncation

    def __repr__(self):
        return f'SubdividedComplex(r={self.r}, counts={self.result.counts})'

def subdivided_truncation(N, r):
    return (N + 1) // r - 1

def edgewise_subdivide(X, r):
    """
    Args:
        - X (SimplicialSet): truncated at N
        - r (int): r >= 1
    Output:
        - subdivided (SubdividedComplex): sd_r X, truncated at floor((N+1)/r) - 1.
          If X is cyclic with multiplicity q, sd_r X is cyclic with multiplicity rq,
          with t_k of sd_r X equal to t_{r(k+1)-1} of X, and the generator of the
          order-r action is its (k+1)-st power.
    """
    if not isinstance(r, (int, np.integer)) or r < 1:
        raise UsageError(f'The subdivision factor must be a positive integer, got {r}')
    M = subdivided_truncation(X.truncation, r)
    if M < 0:
        raise TruncationError(f'sd_{r} needs X through degree {r-1}, but X is truncated at {X.truncation}')
    top = [r * (k + 1) - 1 for k in range(M + 1)]
    counts = [X.counts[d] for d in top]
    faces = [[]]
    for k in range(1, M + 1):
        faces.append([monotone_table(X, concatenate_monotone(coface(k, i), k, r), top[k])
                      for i in range(k + 1)])
    degeneracies = [[monotone_table(X, concatenate_monotone(codegeneracy(k, i), k, r), top[k])
                     for i in range(k + 1)] for k in range(M)]
    labels = [X.labels[d] for d in top] if X.labels is not None else None
    name = f'sd_{r}({X.name})' if X.name else f'sd_{r}'
    if X.is_cyclic:
        cyclic = [X.t(d) for d in top]
        result = CyclicSet(counts, faces, degeneracies, cyclic, labels=labels, name=name,
                           multiplicity=r * X.multiplicity)
        generator = [permutation_power(cyclic[k], k + 1) for k in range(M + 1)]
    else:
        result = SimplicialSet(counts, faces, degeneracies, labels=labels, name=name)
        generator = [np.arange(c, dtype=np.int64) for c in counts] if r == 1 else None
    logger.debug('Subdivided %s by %d: counts %s', X.name, r, counts)
    return SubdividedComplex(X, r, result, generator)

def fixed_subcomplex(subdivided):
    """
    The simplices of sd_r X fixed by the order-r action, with the inclusion into sd_r X.
    If sd_r X is cyclic with multiplicity rq, the fixed part is cyclic with multiplicity q.

    Output:
        - fixed (SimplicialSet or CyclicSet)
        - inclusion (SimplicialMap): fixed -> sd_r X
    """
    if subdivided.cr_generator is None:
        raise ValueError(
            f'sd_{subdivided.r} of a complex without cyclic structure has no C_{subdivided.r} action')
    Y = subdivided.result
    kept = [np.nonzero(g == np.arange(len(g)))[0] for g in subdivided.cr_generator]
    new_index = []
    for k, idx in enumerate(kept):
        lookup = np.full(Y.counts[k], -1, dtype=np.int64)
        lookup[idx] = np.arange(len(idx))
        new_index.append(lookup)

    def restrict(table, k_from, k_to, what):
        image = new_index[k_to][table[kept[k_from]]]
        if len(image) and image.min() < 0:
            bad = int(kept[k_from][np.nonzero(image < 0)[0][0]])
            raise ValueError(f'The fixed simplices are not closed under {what}: degree {k_from}, simplex {bad}')
        return image

    M = Y.truncation
    faces = [[]] + [[restrict(Y.face(k, i), k, k - 1, f'd_{i}') for i in range(k + 1)]
                    for k in range(1, M + 1)]
    degeneracies = [[restrict(Y.degeneracy(k, i), k, k + 1, f's_{i}') for i in range(k + 1)]
                    for k in range(M)]
    counts = [len(idx) for idx in kept]
    labels = [[Y.labels[k][x] for x in idx] for k, idx in enumerate(kept)] if Y.labels is not None else None
    name = f'fixed({Y.name})'
    if Y.is_cyclic:
        cyclic = [restrict(Y.t(k), k, k, 't') for k in range(M + 1)]
        fixed = CyclicSet(counts, faces, degeneracies, cyclic, labels=labels, name=name,
                          multiplicity=max(Y.multiplicity // subdivided.r, 1))
    else:
        fixed = SimplicialSet(counts, faces, degeneracies, labels=labels, name=name)
    inclusion = SimplicialMap(fixed, Y, kept, cyclic=Y.is_cyclic, name='inclusion')
    return fixed, inclusion

def dbar_map(X, r, subdivided=None):
    """
    The map sd_r X -> X given in degree k by d_0 iterated (r-1)(k+1) times,
    i.e. the restriction of X_{r(k+1)-1} to the last block of vertices.
    """
    if subdivided is None:
        subdivided = edgewise_subdivide(X, r)
    Y = subdivided.result
    maps = []
    for k in range(Y.truncation + 1):
        idx = np.arange(Y.counts[k], dtype=np.int64)
        for d in range(r * (k + 1) - 1, k, -1):
            idx = X.face(d, 0)[idx]
        maps.append(idx)
    return SimplicialMap(Y, X, maps, cyclic=False, name=f'dbar_{r}')

class CubeLabel(NamedTuple):
    """
    A word in the formal operators D_p and Dbar_p, stored as letters ('D', p) and
    ('Dbar', p) in the order they are applied. Letters of one kind commute with each
    other, so every maximal run of one kind is kept sorted; a D and a Dbar never commute.
    """
    letters: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def from_letters(cls, letters):
        out, run = [], []
        for letter in letters:
            if run and letter[0] != run[0][0]:
                out += sorted(run)
                run = []
            run.append(tuple(letter))
        return cls(tuple(out + sorted(run)))

    @classmethod
    def word(cls, frobenius=(), dbar=()):
        """
        The word applying D_p for p in frobenius first, then Dbar_p for p in dbar.
        """
        return cls.from_letters([('D', p) for p in frobenius] + [('Dbar', p) for p in dbar])

    @property
    def frobenius(self):
        return tuple(sorted(p for kind, p in self.letters if kind == 'D'))

    @property
    def dbar(self):
        return tuple(sorted(p for kind, p in self.letters if kind == 'Dbar'))

    @property
    def is_normal(self):
        """
        True when no D is applied after a Dbar.
        """
        kinds = [kind for kind, _ in self.letters]
        return 'D' not in kinds[kinds.index('Dbar'):] if 'Dbar' in kinds else True

    def then(self, other, strict=True):
        """
        The word self followed by other. With strict=True, a D after a Dbar raises ValueError.
        """
        out = CubeLabel.from_letters(self.letters + other.letters)
        if strict and not out.is_normal:
            raise ValueError(f'Cannot apply {other} after {self}')
        return out

    def __str__(self):
        runs = []
        for kind, p in self.letters:
            if runs and runs[-1][0] == kind:
                runs[-1][1].append(p)
            else:
                runs.append((kind, [p]))
        parts = [f'{kind}_' + '*'.join(map(str, primes)) for kind, primes in reversed(runs)]
        return ' o '.join(parts) if parts else 'id'

def cube_symbols(U):
    return {p: sympy.Symbol(f't_{p}') for p in U}

def cube_homotopy(U, symbols=None):
    """
    The formal interpolating cube for the primes in U:
    the sum over W of prod_{p in W} t_p * prod_{p not in W} (1 - t_p) * Dbar_W o D_{U-W}.

    Output:
        - terms (dict): CubeLabel -> sympy expression
    """
    U = tuple(sorted(U))
    symbols = symbols or cube_symbols(U)
    terms = {}
    for size in range(len(U) + 1):
        for W in itertools.combinations(U, size):
            rest = tuple(p for p in U if p not in W)
            coefficient = sympy.Integer(1)
            for p in W:
                coefficient *= symbols[p]
            for p in rest:
                coefficient *= (1 - symbols[p])
            label = CubeLabel.word(frobenius=rest, dbar=W)
            terms[label] = terms.get(label, 0) + coefficient
    return terms

def _same_terms(lhs, rhs):
    for label in set(lhs) | set(rhs):
        if sympy.expand(lhs.get(label, 0) - rhs.get(label, 0)) != 0:
            return False
    return True

def verify_cube_face_relations(U, homotopy=cube_homotopy):
    """
    Checks, for every nonempty V in U, that setting t_p = 0 on V gives the cube for
    U - V precomposed with D_V, and that setting t_p = 1 on V gives it followed by Dbar_V.
    A face also fails when the cube contains a word applying a D after a Dbar.

    Args:
        - U (iterable of int): distinct primes, at most 6
        - homotopy (callable): builds the cube from (primes, symbols); cube_homotopy by default
    Output:
        - rows (list of dict): one per (V, face) with keys 'U', 'V', 'face', 'passed'
    """
    U = tuple(sorted(set(U)))
    if len(U) > 6:
        raise UsageError('verify_cube_face_relations supports at most 6 primes')
    if any(not sympy.isprime(p) for p in U):
        raise UsageError(f'All elements of {U} must be primes')
    symbols = cube_symbols(U)
    h = homotopy(U, symbols)
    normal = all(label.is_normal for label in h)
    rows = []
    for size in range(1, len(U) + 1):
        for V in itertools.combinations(U, size):
            rest = tuple(p for p in U if p not in V)
            h_rest = homotopy(rest, symbols)
            for face, value in (('lower', 0), ('upper', 1)):
                substituted = {}
                for label, coefficient in h.items():
                    coefficient = sympy.expand(coefficient.subs({symbols[p]: value for p in V}))
                    if coefficient != 0:
                        substituted[label] = substituted.get(label, 0) + coefficient
                if face == 'lower':
                    expected = {CubeLabel.word(frobenius=V).then(label, strict=False): c for label, c in h_rest.items()}
                else:
                    expected = {label.then(CubeLabel.word(dbar=V), strict=False): c for label, c in h_rest.items()}
                rows.append({'U': U, 'V': V, 'face': face,
                             'passed': normal and _same_terms(substituted, expected)})
    return rows

def compare_iterated_subdivision(X, r, s):
    """
    Compares sd_r(sd_s X) with sd_rs X. Both have the simplices X_{rs(k+1)-1} in degree k,
    so the operator tables must agree entry by entry.

    Output:
        - violations (list of Violation)
    """
    iterated = edgewise_subdivide(edgewise_subdivide(X, s).result, r).result
    direct = edgewise_subdivide(X, r * s).result
    if list(iterated.counts) != list(direct.counts):
        return [Violation(f'sd_{r} sd_{s} = sd_{r*s} on simplices',
                          witness={'iterated': list(iterated.counts), 'direct': list(direct.counts)})]
    violations = []

    def compare(identity, k, lhs, rhs):
        bad = first_mismatches(lhs, rhs)
        if len(bad):
            violations.append(Violation(identity, degree=k, witness=int(bad[0]), count=len(bad)))

    for k in range(1, direct.truncation + 1):
        for i in range(k + 1):
            compare(f'sd_{r} sd_{s} = sd_{r*s} on d_{i}', k, iterated.face(k, i), direct.face(k, i))
    for k in range(direct.truncation):
        for i in range(k + 1):
            compare(f'sd_{r} sd_{s} = sd_{r*s} on s_{i}', k, iterated.degeneracy(k, i), direct.degeneracy(k, i))
    if direct.is_cyclic:
        for k in range(direct.truncation + 1):
            compare(f'sd_{r} sd_{s} = sd_{r*s} on t', k, iterated.t(k), direct.t(k))
    return violations
