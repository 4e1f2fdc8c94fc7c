import logging

from sympy.polys.matrices import DomainMatrix

from cytrace.common.checks.check import CheckResult, Violation
from cytrace.common.errors import NotInvertibleError, SchemaError, UsageError
from cytrace.common.rings import get_ring
from cytrace.common.utils import get_rng, truncation_set
from cytrace.witt.witt_vector import (
    frobenius_witt, from_series, ghost, quotient_set, restrict_witt, witt_add, witt_mul)

logger = logging.getLogger(__name__)

# matrices are tuples of rows of canonical ring elements; linear algebra runs on
# sympy DomainMatrix over ring.domain

def as_matrix(ring, rows):
    """
    Normalizes a square matrix, given as a list of rows, into a tuple of tuples.
    """
    ring = get_ring(ring)
    rows = [list(row) for row in rows]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise SchemaError('Expected a square matrix')
    return tuple(tuple(ring.parse(v) if isinstance(v, str) else ring.normalize(v) for v in row) for row in rows)

def to_domain_matrix(ring, A):
    n_rows = len(A)
    n_cols = len(A[0]) if n_rows else 0
    return DomainMatrix([[ring.to_domain(a) for a in row] for row in A], (n_rows, n_cols), ring.domain)

def from_domain_matrix(ring, M):
    return tuple(tuple(ring.from_domain(a) for a in row) for row in M.to_list())

def identity_matrix(ring, n):
    ring = get_ring(ring)
    return from_domain_matrix(ring, DomainMatrix.eye(n, ring.domain))

def mat_mul(ring, A, B):
    return from_domain_matrix(ring, to_domain_matrix(ring, A).matmul(to_domain_matrix(ring, B)))

def mat_pow(ring, A, e):
    return from_domain_matrix(ring, to_domain_matrix(ring, A) ** e)

def block_sum(ring, A, B):
    """
    The block-diagonal matrix with blocks A and B.
    """
    n, m = len(A), len(B)
    rows = [tuple(A[i]) + (ring.zero,) * m for i in range(n)]
    rows += [(ring.zero,) * n + tuple(B[i]) for i in range(m)]
    return tuple(rows)

def kronecker(ring, A, B):
    n, m = len(A), len(B)
    return tuple(
        tuple(ring.mul(A[i // m][j // m], B[i % m][j % m]) for j in range(n * m))
        for i in range(n * m))

def permutation_matrix(ring, perm):
    """
    The matrix sending basis vector e_j to e_perm[j].
    """
    n = len(perm)
    return tuple(tuple(ring.one if perm[j] == i else ring.zero for j in range(n)) for i in range(n))

def cycle_matrix(ring, cycle_type):
    """
    The block permutation matrix with one cyclic block per entry of cycle_type.
    """
    perm, start = [], 0
    for n in cycle_type:
        perm.extend(start + (j + 1) % n for j in range(n))
        start += n
    return permutation_matrix(ring, perm)

def power_traces(ring, A, exponents):
    """
    tr(A^k) for each k in exponents, from DomainMatrix powers.
    """
    M = to_domain_matrix(ring, A)
    out = []
    for k in exponents:
        total = ring.domain.zero
        for a in (M ** k).diagonal():
            total = ring.domain.add(total, a)
        out.append(ring.from_domain(total))
    return tuple(out)

def charpoly(ring, A):
    """
    Coefficients [1, c_1, ..., c_n] of det(xI - A). sympy computes them division free,
    so over Z/m with m composite they are computed over Z and reduced.
    """
    if not A:
        return [ring.one]
    return [ring.from_domain(c) for c in to_domain_matrix(ring, A).charpoly()]

def determinant(ring, A):
    if not A:
        return ring.one
    return ring.from_domain(to_domain_matrix(ring, A).det())

def char_series(ring, A, N, sign=-1):
    """
    det(1 - tA) (or det(1 + tA) with sign=+1) as coefficients of t^0..t^N.
    """
    if sign not in (-1, 1):
        raise UsageError('sign must be -1 or +1')
    coefficients = charpoly(ring, A)
    if sign == 1:
        coefficients = [c if i % 2 == 0 else ring.neg(c) for i, c in enumerate(coefficients)]
    return (coefficients + [ring.zero] * (N + 1))[:N + 1]

def trc0(ring, A, S, strict=False, allow_singular=False):
    """
    The Witt vector over S with series det(1 - tA).
    By default the series is read over 1..max S and restricted to S; with strict=True it
    is read over S directly, and coefficients outside the span of S raise ResidualError.

    Args:
        - ring (Ring or str)
        - A (square matrix)
        - S (iterable of int): truncation set
    Output:
        - x (WittVector)
    """
    ring = get_ring(ring)
    A = as_matrix(ring, A)
    S = tuple(sorted(S))
    coefficients = charpoly(ring, A)
    det = coefficients[-1] if len(A) % 2 == 0 else ring.neg(coefficients[-1])
    if not allow_singular and not ring.is_unit(det):
        raise NotInvertibleError(f'det = {det} is not a unit in {ring.tag}')
    P = max(S) if S else 0
    series = (coefficients + [ring.zero] * (P + 1))[:P + 1]
    if strict:
        return from_series(series, S, ring)
    return restrict_witt(from_series(series, range(1, P + 1), ring), S)

def random_matrix(ring, n, rng, low=-2, high=2):
    return tuple(tuple(ring.normalize(int(rng.integers(low, high + 1))) for _ in range(n)) for _ in range(n))

def random_automorphism(ring, n, rng, low=-2, high=2, max_attempts=2000):
    """
    A random matrix with entries in low..high and unit determinant, by rejection.
    """
    for _ in range(max_attempts):
        A = random_matrix(ring, n, rng, low, high)
        if ring.is_unit(determinant(ring, A)):
            return A
    raise NotInvertibleError(f'No invertible {n}x{n} matrix found over {ring.tag} in {max_attempts} draws')

def random_conjugator(ring, n, rng, steps=6):
    """
    A random invertible g together with its inverse, as a product of a permutation and
    elementary row operations adding a multiple of one row to another.
    """
    perm = [int(v) for v in rng.permutation(n)]
    inverse_perm = [0] * n
    for j, p in enumerate(perm):
        inverse_perm[p] = j
    g = permutation_matrix(ring, perm)
    g_inv = permutation_matrix(ring, inverse_perm)
    for _ in range(steps if n > 1 else 0):
        i, j = [int(v) for v in rng.choice(n, size=2, replace=False)]
        c = ring.normalize(int(rng.integers(-2, 3)))
        E = [list(row) for row in identity_matrix(ring, n)]
        E_inv = [list(row) for row in identity_matrix(ring, n)]
        E[i][j] = c
        E_inv[i][j] = ring.neg(c)
        g = mat_mul(ring, E, g)
        g_inv = mat_mul(ring, g_inv, E_inv)
    return g, g_inv

def random_invertible(ring, n, rng, steps=6):
    """
    A product of a permutation matrix and elementary matrices; invertible over every ring.
    """
    return random_conjugator(ring, n, rng, steps=steps)[0]

DEFAULT_TRACE_CONFIG = {
    'rings': ['z:0', 'z:5'],
    'sizes': [1, 2, 3],
    'S': 12,
    'r': [1, 2, 3, 4],
    'trials': 200,
    'seed': 0,
}

def trace_property_suite(config, witt_mul=witt_mul, trace=trc0):
    """
    Randomized checks of trc0 against the Witt vector operations: additivity on block
    sums, multiplicativity on Kronecker products, compatibility with F_r, invariance under
    conjugation, and ghost components equal to traces of powers. The last law reads the
    powers off DomainMatrix directly and does not go through the series dictionary.

    Args:
        - config (dict): rings, sizes, S (an integer n meaning the divisors of n), r, trials, seed
        - witt_mul (callable): the product compared against Kronecker products
        - trace (callable): the map under test, with the signature of trc0
    Output:
        - report (dict): law name -> CheckResult; empty for an empty configuration
    """
    trials = int(config.get('trials', 0))
    if not config or trials <= 0 or not config.get('sizes') or not config.get('rings'):
        return {}
    S = truncation_set(int(config.get('S', 12)))
    rs = list(config.get('r', [1, 2]))
    sizes = list(config['sizes'])
    rng = get_rng(int(config.get('seed', 0)), 548207)
    laws = ['additivity', 'multiplicativity', 'frobenius', 'conjugation', 'ghost']
    violations = {law: [] for law in laws}
    cases = {law: 0 for law in laws}
    for tag in config['rings']:
        ring = get_ring(tag)
        for trial in range(trials):
            n, m = [int(v) for v in rng.choice(sizes, size=2)]
            r = int(rng.choice(rs))
            A = random_automorphism(ring, n, rng)
            Bm = random_automorphism(ring, m, rng)
            x, y = trace(ring, A, S), trace(ring, Bm, S)
            witness = {'ring': ring.tag, 'A': A, 'B': Bm, 'r': r}

            cases['additivity'] += 1
            if trace(ring, block_sum(ring, A, Bm), S) != witt_add(x, y):
                violations['additivity'].append(Violation('trc0(A + B) = trc0(A) + trc0(B)', witness=witness))

            cases['multiplicativity'] += 1
            if trace(ring, kronecker(ring, A, Bm), S) != witt_mul(x, y):
                violations['multiplicativity'].append(Violation('trc0(A x B) = trc0(A) trc0(B)', witness=witness))

            T = quotient_set(S, r)
            cases['frobenius'] += 1
            if T and frobenius_witt(x, r) != trace(ring, mat_pow(ring, A, r), T):
                violations['frobenius'].append(Violation('F_r trc0(A) = trc0(A^r)', witness=witness))

            g, g_inv = random_conjugator(ring, n, rng)
            cases['conjugation'] += 1
            if trace(ring, mat_mul(ring, mat_mul(ring, g, A), g_inv), S) != x:
                violations['conjugation'].append(Violation('trc0(g A g^-1) = trc0(A)', witness=witness))

            cases['ghost'] += 1
            if ghost(x) != power_traces(ring, A, S):
                violations['ghost'].append(Violation('ghost(trc0(A))_m = tr(A^m)', witness=witness))
    report = {}
    for law in laws:
        report[law] = CheckResult(name=law, passed=not violations[law], n_cases=cases[law],
                                  violations=violations[law])
    logger.info('trace laws: %s', {law: result.passed for law, result in report.items()})
    return report
