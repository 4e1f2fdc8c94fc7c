import logging
import math

from cytrace.common.checks.check import Violation
from cytrace.common.errors import ResidualError, SchemaError, UsageError
from cytrace.common.rings import get_ring
from cytrace.common.utils import divisors, get_rng, is_divisor_closed, truncation_set

logger = logging.getLogger(__name__)

class WittVector:
    """
    A big Witt vector over a truncation set S, stored by its coordinates a_n (n in S)
    in the dictionary with power series: (a_n) <-> prod_{n in S} (1 - a_n t^n).

    Args:
        - ring (Ring or str): coefficient ring, or its tag
        - S (iterable of int): a divisor-closed set of positive integers
        - coords (sequence or dict): coordinates in increasing order of S, or n -> a_n
    """
    def __init__(self, ring, S, coords):
        self._ring = get_ring(ring)
        self._S = tuple(sorted(set(int(n) for n in S)))
        if not is_divisor_closed(self._S):
            raise UsageError(f'{self._S} is not a truncation set: it must contain every divisor of its elements')
        if isinstance(coords, dict):
            if set(coords) - set(self._S):
                raise SchemaError(f'Coordinates {sorted(set(coords) - set(self._S))} are outside {self._S}')
            values = [coords.get(n, 0) for n in self._S]
        else:
            values = list(coords)
        if len(values) != len(self._S):
            raise SchemaError(f'Expected {len(self._S)} coordinates for {self._S}, got {len(values)}')
        self._coords = tuple(self._ring.normalize(v) for v in values)

    @property
    def ring(self):
        return self._ring

    @property
    def S(self):
        return self._S

    @property
    def coords(self):
        return self._coords

    def __getitem__(self, n):
        return self._coords[self._S.index(n)] if n in self._S else self._ring.zero

    def as_dict(self):
        return dict(zip(self._S, self._coords))

    def __eq__(self, other):
        return (isinstance(other, WittVector) and self._ring == other._ring
                and self._S == other._S and self._coords == other._coords)

    def __hash__(self):
        return hash((self._ring.tag, self._S, self._coords))

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __repr__(self):
        return f'WittVector({self._ring.tag}, S={list(self._S)}, coords={list(self._coords)})'

    def to_json(self):
        return {
            'kind': 'witt',
            'ring': self._ring.tag,
            'S': list(self._S),
            'coords': [self._ring.serialize(a) for a in self._coords],
        }

    @classmethod
    def from_json(cls, payload):
        try:
            ring = get_ring(payload['ring'])
            return cls(ring, payload['S'], [ring.parse(a) for a in payload['coords']])
        except KeyError as e:
            raise SchemaError(f'Witt vector artifact is missing {e}')

def zero(ring, S):
    ring = get_ring(ring)
    return WittVector(ring, S, [ring.zero] * len(tuple(S)))

def one(ring, S):
    return teichmuller(get_ring(ring).one, ring, S)

def teichmuller(a, ring, S):
    """
    [a], the vector with a_1 = a and all other coordinates zero: the series 1 - a t.
    """
    ring = get_ring(ring)
    S = tuple(sorted(S))
    return WittVector(ring, S, {1: a} if 1 in S else {})

def _interval(S):
    return tuple(range(1, max(S) + 1)) if S else ()

def _precision(S):
    return max(S) if S else 0

# truncated power series are lists c[0..P] of ring elements

def _series_mul(ring, f, g, P):
    out = [ring.zero] * (P + 1)
    for i, a in enumerate(f[:P + 1]):
        if a == ring.zero:
            continue
        for j, b in enumerate(g[:P + 1 - i]):
            if b != ring.zero:
                out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return out

def _series_inverse(ring, f, P):
    """
    1/f for f with constant term 1.
    """
    h = [ring.one] + [ring.zero] * P
    for n in range(1, P + 1):
        total = ring.zero
        for i in range(1, min(n, len(f) - 1) + 1):
            total = ring.add(total, ring.mul(f[i], h[n - i]))
        h[n] = ring.neg(total)
    return h

def _factor_series(ring, a, n, P, d=1):
    """
    (1 - a t^n)^d truncated at t^P.
    """
    out = [ring.zero] * (P + 1)
    out[0] = ring.one
    if n > P or a == ring.zero:
        return out
    for j in range(1, min(d, P // n) + 1):
        out[n * j] = ring.mul(ring.from_int(math.comb(d, j)), ring.pow(ring.neg(a), j))
    return out

def to_series(x, P=None):
    """
    The power series prod_{n in S} (1 - a_n t^n), truncated at t^P (P = max S by default).
    """
    ring = x.ring
    P = _precision(x.S) if P is None else P
    out = [ring.one] + [ring.zero] * P
    for n, a in zip(x.S, x.coords):
        if n <= P and a != ring.zero:
            out = _series_mul(ring, out, _factor_series(ring, a, n, P), P)
    return out

def from_series(f, S, ring='z:0'):
    """
    The coordinates (a_n) with prod_{n in S} (1 - a_n t^n) = f modulo t^(max S + 1).

    Args:
        - f (list): coefficients f[0] = 1, f[1], ... ; missing coefficients are zero
        - S (iterable of int): truncation set
        - ring (Ring or str)
    Output:
        - x (WittVector)
    Raises:
        - ResidualError if a coefficient at an exponent outside S cannot be absorbed
    """
    ring = get_ring(ring)
    S = tuple(sorted(set(S)))
    if not is_divisor_closed(S):
        raise UsageError(f'{S} is not a truncation set')
    P = _precision(S)
    g = [ring.normalize(c) for c in list(f)[:P + 1]] + [ring.zero] * max(0, P + 1 - len(f))
    if g[0] != ring.one:
        raise SchemaError('A series in the Witt vector dictionary must have constant term 1')
    members = set(S)
    coords = {}
    for n in range(1, P + 1):
        c = g[n]
        if n not in members:
            if c != ring.zero:
                raise ResidualError(n, c)
            continue
        a = ring.neg(c)
        coords[n] = a
        if a != ring.zero:
            # divide by 1 - a t^n
            geometric = [ring.zero] * (P + 1)
            for j in range(0, P // n + 1):
                geometric[n * j] = ring.pow(a, j)
            g = _series_mul(ring, g, geometric, P)
    return WittVector(ring, S, coords)

def restrict_witt(x, T):
    """
    Projection W_S -> W_T onto the coordinates in T, for a truncation set T inside S.
    """
    T = tuple(sorted(set(T)))
    if not is_divisor_closed(T):
        raise UsageError(f'{T} is not divisor-closed')
    if set(T) - set(x.S):
        raise UsageError(f'{T} is not contained in {x.S}')
    return WittVector(x.ring, T, {n: x[n] for n in T})

def _lift(x):
    """
    The vector over 1..max S with zeros outside S; it maps to x under restriction.
    """
    return WittVector(x.ring, _interval(x.S), x.as_dict())

def _check_compatible(x, y):
    if x.ring != y.ring:
        raise UsageError(f'Witt vectors over different rings: {x.ring.tag} and {y.ring.tag}')
    if x.S != y.S:
        raise UsageError(f'Witt vectors over different truncation sets: {x.S} and {y.S}')

def witt_add(x, y):
    """
    Sum in W_S: the product of the two power series, read back over 1..max S and restricted to S.
    """
    _check_compatible(x, y)
    P = _precision(x.S)
    series = _series_mul(x.ring, to_series(x), to_series(y), P)
    return restrict_witt(from_series(series, _interval(x.S), x.ring), x.S)

def witt_neg(x):
    P = _precision(x.S)
    series = _series_inverse(x.ring, to_series(x), P)
    return restrict_witt(from_series(series, _interval(x.S), x.ring), x.S)

def witt_sub(x, y):
    return witt_add(x, witt_neg(y))

def witt_mul(x, y):
    """
    Product in W_S, from (1 - a t^m) * (1 - b t^n) = (1 - a^(n/d) b^(m/d) t^lcm(m,n))^d with d = gcd(m, n).
    """
    _check_compatible(x, y)
    ring = x.ring
    P = _precision(x.S)
    series = [ring.one] + [ring.zero] * P
    for m, a in zip(x.S, x.coords):
        if a == ring.zero:
            continue
        for n, b in zip(y.S, y.coords):
            if b == ring.zero:
                continue
            d = math.gcd(m, n)
            l = m * n // d
            if l > P:
                continue
            c = ring.mul(ring.pow(a, n // d), ring.pow(b, m // d))
            series = _series_mul(ring, series, _factor_series(ring, c, l, P, d), P)
    return restrict_witt(from_series(series, _interval(x.S), ring), x.S)

def ghost(x):
    """
    Ghost components w_m = sum_{d | m} d a_d^(m/d), for m in S.
    """
    ring = x.ring
    out = []
    for m in x.S:
        total = ring.zero
        for d in divisors(m):
            total = ring.add(total, ring.mul(ring.from_int(d), ring.pow(x[d], m // d)))
        out.append(total)
    return tuple(out)

def quotient_set(S, r):
    """
    S / r = {n : rn in S}.
    """
    return tuple(n for n in range(1, _precision(S) // r + 1) if r * n in set(S))

def frobenius_witt(x, r):
    """
    F_r: W_S -> W_{S/r}, from F_r(1 - a t^n) = (1 - a^(r/d) t^(n/d))^d with d = gcd(r, n).
    """
    if r < 1:
        raise UsageError(f'r must be a positive integer, got {r}')
    ring = x.ring
    T = quotient_set(x.S, r)
    P = _precision(T)
    series = [ring.one] + [ring.zero] * P
    for n, a in zip(x.S, x.coords):
        if a == ring.zero:
            continue
        d = math.gcd(r, n)
        if n // d > P:
            continue
        series = _series_mul(ring, series, _factor_series(ring, ring.pow(a, r // d), n // d, P, d), P)
    return restrict_witt(from_series(series, _interval(T), ring), T)

def verschiebung_witt(x, r, S):
    """
    V_r: W_{S/r} -> W_S, substituting t -> t^r: the coordinate a_n moves to rn.
    """
    if r < 1:
        raise UsageError(f'r must be a positive integer, got {r}')
    S = tuple(sorted(set(S)))
    if x.S != quotient_set(S, r):
        raise UsageError(f'V_{r} into {S} needs a vector over {quotient_set(S, r)}, got {x.S}')
    return WittVector(x.ring, S, {r * n: a for n, a in zip(x.S, x.coords)})

def witt_equal(x, y):
    return x == y

def random_witt(ring, S, rng, low=-3, high=3):
    ring = get_ring(ring)
    return WittVector(ring, S, [ring.random_element(rng, low, high) for _ in S])

def check_index_diagram(ring, B, trials, seed=0, restriction=None, frobenius=None, index_category=None):
    """
    Checks that n -> W_<n>(ring), with F_r and R_s acting by frobenius_witt and
    restrict_witt, is a functor on the index category up to B: every composable pair
    is covered, with fresh random vectors, and F_r R_s = R_s F_r is checked directly.

    Args:
        - restriction, frobenius (callable, optional): replacements for restrict_witt
          and frobenius_witt, used for negative controls
    Output:
        - n_cases (int)
        - violations (list of Violation)
    """
    from cytrace.categories.indexcat import build_index_category

    ring = get_ring(ring)
    restriction = restriction or restrict_witt
    frobenius = frobenius or frobenius_witt
    C = index_category or build_index_category(B)
    rng = get_rng(seed, 632519)

    def act(phi, x):
        # R_s: m -> m/s first, then F_r
        return frobenius(restriction(x, truncation_set(phi.m // phi.s)), phi.r)

    pairs = [(g, f) for g in range(C.n_morphisms) for f in range(C.n_morphisms) if C.compose(g, f) >= 0]
    violations, n_cases = [], 0
    total = max(trials, len(pairs))
    for t in range(total):
        g, f = pairs[t % len(pairs)]
        phi_g, phi_f = C.morphisms[g], C.morphisms[f]
        x = random_witt(ring, truncation_set(phi_f.m), rng)
        lhs = act(C.morphisms[C.compose(g, f)], x)
        rhs = act(phi_g, act(phi_f, x))
        n_cases += 1
        if lhs != rhs:
            violations.append(Violation('W(g o f) = W(g) W(f)', witness=(tuple(phi_g), tuple(phi_f), x.coords)))
    for m in range(1, B + 1):
        for r in divisors(m):
            for s in divisors(m // r):
                n = m // (r * s)
                x = random_witt(ring, truncation_set(m), rng)
                fr = frobenius(restriction(x, truncation_set(r * n)), r)
                rf = restriction(frobenius(x, r), truncation_set(n))
                n_cases += 1
                if fr != rf:
                    violations.append(Violation('F_r R_s = R_s F_r', witness=(m, r, s, x.coords)))
    logger.debug('Index diagram over %s up to %d: %d cases, %d violations', ring.tag, B, n_cases, len(violations))
    return n_cases, violations
