import json

import pytest

from cytrace.categories.barcat import cyclic_bar
from cytrace.categories.fincat import validate_category
from cytrace.common.errors import SchemaError
from cytrace.common.schemas import load_artifact, monoid_to_json, read_json, save_artifact
from cytrace.common.utils import dump_json
from cytrace.complexes.simplicial import validate
from cytrace.witt.witt_vector import WittVector

def test_complex_artifact(tmp_path, sphere4):
    path = str(tmp_path / 'sphere.json')
    save_artifact(sphere4, path)
    kind, X = load_artifact(path, expected=['simplicial'])
    assert kind == 'simplicial'
    assert X.counts == sphere4.counts
    assert validate(X) == []

def test_cyclic_artifact_keeps_labels(tmp_path, z2):
    path = str(tmp_path / 'bcy.json')
    Y = cyclic_bar(z2, 2)
    save_artifact(Y, path)
    _, X = load_artifact(path)
    assert X.is_cyclic
    assert X.labels == Y.labels
    assert X.index_of(1, (1, 1)) == Y.index_of(1, (1, 1))

def test_category_and_monoid_artifacts(tmp_path, s3):
    path = str(tmp_path / 's3.json')
    save_artifact(s3, path)
    kind, C = load_artifact(path)
    assert kind == 'category'
    assert C.n_morphisms == 6
    assert validate_category(C) == []

    path = str(tmp_path / 's3_monoid.json')
    dump_json(monoid_to_json(s3), path)
    kind, M = load_artifact(path, expected=['monoid', 'category'])
    assert kind == 'monoid'
    assert list(M.compose_table.ravel()) == list(s3.compose_table.ravel())

def test_witt_artifact(tmp_path):
    path = str(tmp_path / 'x.json')
    x = WittVector('z:5', (1, 2, 4), [1, 2, 3])
    save_artifact(x, path)
    assert load_artifact(path) == ('witt', x)

def test_unknown_kind(tmp_path):
    path = tmp_path / 'x.json'
    path.write_text(json.dumps({'kind': 'sheaf'}))
    with pytest.raises(SchemaError, match='not recognized'):
        load_artifact(str(path))

def test_unexpected_kind(tmp_path, circle4):
    path = str(tmp_path / 'circle.json')
    save_artifact(circle4, path)
    with pytest.raises(SchemaError, match='expected'):
        load_artifact(path, expected=['witt'])

def test_not_an_object(tmp_path):
    path = tmp_path / 'x.json'
    path.write_text('[1, 2]')
    with pytest.raises(SchemaError):
        load_artifact(str(path))

def test_malformed_complex(tmp_path):
    path = tmp_path / 'x.json'
    path.write_text(json.dumps({'kind': 'simplicial', 'counts': [1, 1]}))
    with pytest.raises(SchemaError, match='malformed'):
        load_artifact(str(path))

def test_face_out_of_range(tmp_path):
    path = tmp_path / 'x.json'
    payload = {'kind': 'simplicial', 'counts': [1, 1], 'faces': [[], [[0], [1]]], 'degeneracies': [[[0]]]}
    path.write_text(json.dumps(payload))
    with pytest.raises(SchemaError):
        load_artifact(str(path))

def test_parse_error_reports_byte_offset(tmp_path):
    path = tmp_path / 'x.json'
    path.write_bytes('{"a": 1,,}'.encode('utf-8'))
    with pytest.raises(SchemaError, match='byte offset 8'):
        read_json(str(path))
    path.write_bytes('{"é": 1,,}'.encode('utf-8'))
    with pytest.raises(SchemaError, match='byte offset 9'):
        read_json(str(path))

def test_invalid_utf8(tmp_path):
    path = tmp_path / 'x.json'
    path.write_bytes(b'{"a": "\xff"}')
    with pytest.raises(SchemaError, match='byte offset 7'):
        read_json(str(path))

def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match='no such file'):
        read_json(str(tmp_path / 'missing.json'))
