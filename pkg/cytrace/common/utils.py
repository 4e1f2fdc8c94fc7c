import json
import math
import os
import tempfile

import numpy as np

def divisors(n):
    """
    Positive divisors of n in increasing order.
    """
    if n < 1:
        raise ValueError(f'divisors() expects a positive integer, got {n}')
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]

def lcm(a, b):
    return a * b // math.gcd(a, b)

def is_divisor_closed(numbers):
    """
    True if every positive divisor of every element is again an element.
    The empty set counts as divisor-closed.
    """
    numbers = set(numbers)
    if any((not isinstance(n, (int, np.integer))) or n < 1 for n in numbers):
        return False
    return all(d in numbers for n in numbers for d in divisors(int(n)))

def truncation_set(n):
    """
    The truncation set of all divisors of n, as a sorted tuple.
    """
    return tuple(divisors(n))

def invert_permutation(perm):
    """
    Args:
        - perm (np.ndarray): a permutation of 0..len(perm)-1
    Output:
        - inverse (np.ndarray)
    """
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(len(perm), dtype=perm.dtype)
    return inverse

def permutation_power(perm, exponent):
    """
    Applies perm exponent times by repeated squaring. perm[x] is the image of x.
    """
    result = np.arange(len(perm), dtype=np.int64)
    base = np.asarray(perm, dtype=np.int64)
    while exponent > 0:
        if exponent & 1:
            result = base[result]
        base = base[base]
        exponent >>= 1
    return result

def get_rng(seed=None, offset=541433):
    seed = (seed + offset) if seed is not None else None
    return np.random.default_rng(seed)

def first_mismatches(lhs, rhs):
    """
    Indices where two equally shaped integer arrays disagree.
    """
    return np.nonzero(np.asarray(lhs) != np.asarray(rhs))[0]

def to_builtin(obj):
    """
    Recursively converts numpy scalars, arrays and tuples into JSON-friendly
    Python objects.
    """
    if isinstance(obj, dict):
        return {str(k): to_builtin(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_builtin(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_builtin(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj

def atomic_write(path, text):
    """
    Writes text to path through a temporary file in the same directory, so that
    readers never observe a partially written file.
    """
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix='.part')
    try:
        with os.fdopen(fd, 'w') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise

def dump_json(obj, path):
    atomic_write(path, json.dumps(to_builtin(obj), indent=2, sort_keys=False) + '\n')
