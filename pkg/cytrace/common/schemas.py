import json
import logging
import os

import numpy as np

from cytrace.common.errors import SchemaError
from cytrace.common.utils import dump_json, to_builtin

logger = logging.getLogger(__name__)

artifact_kinds = [
    'simplicial',
    'category',
    'monoid',
    'witt',
    'report',
    'suite_config',
]

def _tuplify(obj):
    if isinstance(obj, list):
        return tuple(_tuplify(v) for v in obj)
    return obj

def read_json(path):
    """
    Reads a JSON document. Parse errors are reported with their byte offset.
    """
    if not os.path.exists(path):
        raise SchemaError(f'{path}: no such file')
    with open(path, 'rb') as f:
        raw = f.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise SchemaError(f'{path}: not UTF-8 at byte offset {e.start}')
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[:e.pos].encode('utf-8'))
        raise SchemaError(f'{path}: parse error at byte offset {offset}: {e.msg}')

def load_artifact(path, expected=None):
    """
    Loads a JSON artifact and dispatches on its "kind".

    Args:
        - path (str)
        - expected (list of str, optional): kinds accepted by the caller
    Output:
        - kind (str)
        - obj: SimplicialSet/CyclicSet, FinCategory, WittVector, or the raw dict for reports and configs
    """
    payload = read_json(path)
    if not isinstance(payload, dict) or 'kind' not in payload:
        raise SchemaError(f'{path}: an artifact must be a JSON object with a "kind" field')
    kind = payload['kind']
    if kind not in artifact_kinds:
        raise SchemaError(f'{path}: kind {kind!r} not recognized. Must be one of {artifact_kinds}.')
    if expected is not None and kind not in expected:
        raise SchemaError(f'{path}: expected an artifact of kind {expected}, got {kind!r}')
    try:
        return kind, from_json(payload)
    except (KeyError, TypeError, IndexError) as e:
        raise SchemaError(f'{path}: malformed {kind} artifact: {e!r}')

def from_json(payload):
    kind = payload['kind']
    if kind == 'simplicial':
        return complex_from_json(payload)
    elif kind == 'category':
        return category_from_json(payload)
    elif kind == 'monoid':
        from cytrace.categories.fincat import monoid_category
        return monoid_category(payload['elements'], payload['table'], name=payload.get('name'))
    elif kind == 'witt':
        from cytrace.witt.witt_vector import WittVector
        return WittVector.from_json(payload)
    return payload

def to_json(obj):
    from cytrace.categories.fincat import FinCategory
    from cytrace.complexes.simplicial import SimplicialSet
    from cytrace.witt.witt_vector import WittVector
    if isinstance(obj, SimplicialSet):
        return complex_to_json(obj)
    if isinstance(obj, FinCategory):
        return category_to_json(obj)
    if isinstance(obj, WittVector):
        return obj.to_json()
    if isinstance(obj, dict) and obj.get('kind') in artifact_kinds:
        return obj
    raise SchemaError(f'Cannot serialize {type(obj).__name__}')

def save_artifact(obj, path):
    dump_json(to_json(obj), path)
    logger.info('Wrote %s', path)

def complex_to_json(X):
    N = X.truncation
    payload = {
        'kind': 'simplicial',
        'name': X.name,
        'truncation': N,
        'counts': X.counts,
        'faces': [[X.face(k, i) for i in range(k + 1)] if k else [] for k in range(N + 1)],
        'degeneracies': [[X.degeneracy(k, i) for i in range(k + 1)] for k in range(N)],
    }
    if X.is_cyclic:
        payload['cyclic'] = [X.t(k) for k in range(N + 1)]
        payload['multiplicity'] = X.multiplicity
    if X.labels is not None:
        payload['labels'] = X.labels
    return to_builtin(payload)

def complex_from_json(payload):
    from cytrace.complexes.simplicial import CyclicSet, SimplicialSet
    counts = payload['counts']
    if 'truncation' in payload and payload['truncation'] != len(counts) - 1:
        raise SchemaError('"truncation" disagrees with the length of "counts"')
    labels = payload.get('labels')
    if labels is not None:
        labels = [[_tuplify(l) for l in level] for level in labels]
    if 'cyclic' in payload:
        return CyclicSet(counts, payload['faces'], payload['degeneracies'], payload['cyclic'],
                         labels=labels, name=payload.get('name'),
                         multiplicity=payload.get('multiplicity', 1))
    return SimplicialSet(counts, payload['faces'], payload['degeneracies'], labels=labels,
                         name=payload.get('name'))

def category_to_json(C):
    return to_builtin({
        'kind': 'category',
        'name': C.name,
        'objects': C.objects,
        'morphisms': [{'id': C.morphisms[f], 'src': C.objects[C.src(f)], 'dst': C.objects[C.dst(f)]}
                      for f in range(C.n_morphisms)],
        'identities': [[C.objects[a], C.morphisms[C.identity(a)]] for a in range(C.n_objects)],
        'compose': [[C.morphisms[g], C.morphisms[f], C.morphisms[C.compose(g, f)]]
                    for g in range(C.n_morphisms) for f in range(C.n_morphisms) if C.compose(g, f) >= 0],
    })

def category_from_json(payload):
    from cytrace.categories.fincat import FinCategory
    objects = [_tuplify(o) for o in payload['objects']]
    object_index = {o: a for a, o in enumerate(objects)}
    labels = [_tuplify(m['id']) for m in payload['morphisms']]
    index = {m: f for f, m in enumerate(labels)}

    def lookup(table, key, what):
        key = _tuplify(key)
        if key not in table:
            raise SchemaError(f'Unknown {what} {key!r}')
        return table[key]

    sources = [lookup(object_index, m['src'], 'object') for m in payload['morphisms']]
    targets = [lookup(object_index, m['dst'], 'object') for m in payload['morphisms']]
    identities = [0] * len(objects)
    seen = set()
    for obj, ident in payload['identities']:
        a = lookup(object_index, obj, 'object')
        identities[a] = lookup(index, ident, 'morphism')
        seen.add(a)
    if len(seen) != len(objects):
        raise SchemaError('Every object needs an identity')
    compose = np.full((len(labels), len(labels)), -1, dtype=np.int64)
    for g, f, h in payload['compose']:
        compose[lookup(index, g, 'morphism'), lookup(index, f, 'morphism')] = lookup(index, h, 'morphism')
    return FinCategory(objects, labels, sources, targets, identities, compose, name=payload.get('name'))

def monoid_to_json(C):
    """
    A one-object category as a monoid artifact; table[g][f] is the index of g o f.
    """
    if C.n_objects != 1:
        raise SchemaError('Only one-object categories can be written as monoids')
    return to_builtin({
        'kind': 'monoid',
        'name': C.name,
        'elements': C.morphisms,
        'table': C.compose_table,
    })
