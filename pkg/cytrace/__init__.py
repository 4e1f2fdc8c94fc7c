from .version import __version__
from .get_suite import get_suite

algebra_suites = [
    'index_relations',
    'grothendieck',
    'theta',
    'witt_ring',
    'trace_laws',
    'index_circle',
]

complex_suites = [
    'subdivision',
    'bar_operators',
    'conjugacy',
    'coherence',
    'semidirect_theta',
]

supported_suites = algebra_suites + complex_suites

# 'all' expands to every suite
suite_aliases = {
    'all': supported_suites,
}

builtin_complexes = [
    'point',
    'circle',
    'sphere2',
]

builtin_categories = [
    'trivial',
    'z2',
    'z3',
    'z4',
    's3',
    'idempotent',
    'groupoid',
]

supported_rings = [
    'z:0',
    'z:<m>',
    'q',
]
