from numbers import Integral

import numpy as np
from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.polyerrors import CoercionFailed

from cytrace.common.errors import SchemaError

class Ring:
    """
    Parent class for the exact commutative coefficient rings, as thin adapters over
    sympy's polynomial domains. Arithmetic goes through self.domain; elements are kept
    in the canonical form returned by normalize(), so they compare and hash by value.
    """
    def __init__(self, tag, domain):
        self._tag = tag
        self.domain = domain

    @property
    def tag(self):
        """
        Short identifier, as used on the command line and in artifacts ('z:0', 'z:5', 'q').
        """
        return self._tag

    def to_domain(self, x):
        """
        Canonical element -> element of self.domain.
        """
        return self.domain.convert(x)

    def from_domain(self, a):
        """
        Element of self.domain -> canonical element.
        """
        return a

    def normalize(self, x):
        if isinstance(x, (bool, np.bool_, float, np.floating)):
            raise ValueError(f'{x!r} is not an exact element of {self.tag}')
        if isinstance(x, np.integer):
            x = int(x)
        try:
            return self.from_domain(self.domain.convert(x))
        except CoercionFailed as e:
            raise ValueError(f'{x!r} has no image in {self.tag}: {e}')

    def parse(self, value):
        """
        Reads an element from its JSON form (int, or a string such as '3/4').
        """
        try:
            if isinstance(value, str):
                return self.normalize(Rational(value.strip()))
            return self.normalize(value)
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise SchemaError(f'{value!r} is not an element of {self.tag}: {e}')

    def serialize(self, x):
        return int(x)

    @property
    def zero(self):
        return self.from_domain(self.domain.zero)

    @property
    def one(self):
        return self.from_domain(self.domain.one)

    def from_int(self, n):
        return self.normalize(int(n))

    def add(self, x, y):
        return self.from_domain(self.domain.add(self.to_domain(x), self.to_domain(y)))

    def sub(self, x, y):
        return self.from_domain(self.domain.sub(self.to_domain(x), self.to_domain(y)))

    def neg(self, x):
        return self.from_domain(self.domain.neg(self.to_domain(x)))

    def mul(self, x, y):
        return self.from_domain(self.domain.mul(self.to_domain(x), self.to_domain(y)))

    def pow(self, x, n):
        if n < 0:
            raise ValueError('Negative powers are not supported')
        return self.from_domain(self.domain.pow(self.to_domain(x), int(n)))

    def is_zero(self, x):
        return self.domain.is_zero(self.to_domain(self.normalize(x)))

    def is_unit(self, x):
        raise NotImplementedError

    def random_element(self, rng, low=-2, high=2):
        """
        Uniform element among the images of the integers low..high.
        """
        return self.normalize(int(rng.integers(low, high + 1)))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f'{type(self).__name__}({self.tag!r})'

class IntegerRing(Ring):
    def __init__(self):
        super().__init__('z:0', ZZ)

    def from_domain(self, a):
        return int(a)

    def is_unit(self, x):
        return self.domain.abs(self.to_domain(x)) == self.domain.one

class ModularRing(Ring):
    """
    The integers modulo m, with representatives 0..m-1. Prime moduli compute in the
    field GF(m); composite moduli compute in ZZ and reduce.
    """
    def __init__(self, modulus):
        if modulus < 2:
            raise ValueError(f'Modulus must be at least 2, got {modulus}')
        self.modulus = modulus
        super().__init__(f'z:{modulus}', GF(modulus) if isprime(modulus) else ZZ)

    def to_domain(self, x):
        return self.domain.convert(int(x))

    def from_domain(self, a):
        return int(self.domain.to_sympy(a)) % self.modulus

    def normalize(self, x):
        if isinstance(x, (bool, np.bool_, float, np.floating)):
            raise ValueError(f'{x!r} is not an exact element of {self.tag}')
        if isinstance(x, (Integral, np.integer)):
            return int(x) % self.modulus
        try:
            q = QQ.convert(x)
        except CoercionFailed as e:
            raise ValueError(f'{x!r} has no image in Z/{self.modulus}: {e}')
        numerator, denominator = ZZ(QQ.numer(q)), ZZ(QQ.denom(q))
        if ZZ.gcd(denominator, ZZ(self.modulus)) != ZZ.one:
            raise ValueError(f'{x} has no image in Z/{self.modulus}')
        return int(numerator * ZZ.invert(denominator, ZZ(self.modulus))) % self.modulus

    def is_unit(self, x):
        return ZZ.gcd(ZZ(int(x)), ZZ(self.modulus)) == ZZ.one

    def random_element(self, rng, low=None, high=None):
        if low is None or high is None:
            return int(rng.integers(0, self.modulus))
        return super().random_element(rng, low, high)

class RationalField(Ring):
    def __init__(self):
        super().__init__('q', QQ)

    def serialize(self, x):
        numerator, denominator = int(QQ.numer(x)), int(QQ.denom(x))
        return numerator if denominator == 1 else f'{numerator}/{denominator}'

    def is_unit(self, x):
        return not self.domain.is_zero(self.to_domain(x))

def get_ring(tag):
    """
    Args:
        - tag (str): 'z:0' for the integers, 'z:m' (m >= 2) for the integers modulo m, 'q' for the rationals.
    Output:
        - ring (Ring)
    """
    if isinstance(tag, Ring):
        return tag
    if tag in ('q', 'Q'):
        return RationalField()
    if isinstance(tag, str) and tag.lower().startswith('z:'):
        try:
            modulus = int(tag[2:])
        except ValueError:
            raise SchemaError(f'Ring tag {tag} not recognized. Must be one of z:0, z:<m>, q.')
        if modulus == 0:
            return IntegerRing()
        if modulus >= 2:
            return ModularRing(modulus)
    raise SchemaError(f'Ring tag {tag} not recognized. Must be one of z:0, z:<m>, q.')
