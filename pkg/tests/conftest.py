import os

os.environ.setdefault('CYTRACE_SKIP_VERSION_CHECK', '1')

import numpy as np
import pytest

from cytrace.categories.fincat import cyclic_group, symmetric_group
from cytrace.common.rings import get_ring
from cytrace.complexes.builtin import circle, sphere2

@pytest.fixture
def integers():
    return get_ring('z:0')

@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

@pytest.fixture
def circle4():
    return circle(4)

@pytest.fixture
def sphere4():
    return sphere2(4)

@pytest.fixture
def z2():
    return cyclic_group(2)

@pytest.fixture
def z3():
    return cyclic_group(3)

@pytest.fixture
def s3():
    return symmetric_group(3)

@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """
    A fresh report directory, also exported as CYTRACE_OUTPUT_DIR.
    """
    path = tmp_path / 'reports'
    monkeypatch.setenv('CYTRACE_OUTPUT_DIR', str(path))
    return path
