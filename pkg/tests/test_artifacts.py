import json

import pytest

from themescope.artifacts import (artifact_bytes, canonical_json, payload_hash,
                                  read_artifact, write_artifact)
from themescope.errors import DataError


def test_canonical_json_ignores_key_order():
    assert canonical_json({"b": 1, "a": [2, 3]}) == canonical_json({"a": [2, 3], "b": 1})
    assert canonical_json({"a": 1}) == '{"a":1}'


def test_canonical_json_rejects_nan():
    with pytest.raises(ValueError):
        canonical_json({"x": float("nan")})


def test_payload_hash_tracks_content():
    assert payload_hash({"a": 1}) == payload_hash({"a": 1})
    assert payload_hash({"a": 1}) != payload_hash({"a": 2})


def test_artifact_bytes_are_reproducible():
    payload = {"values": [1, 2, 3], "name": "x"}
    assert artifact_bytes("kind", payload) == artifact_bytes("kind", payload)


def test_write_then_read_round_trip(tmp_path):
    path = tmp_path / "thing.json"
    payload = {"numbers": [1.5, 2.0], "label": "demo"}
    sha = write_artifact(path, "demo-artifact", payload)
    doc = read_artifact(path, "demo-artifact")
    assert doc["payload"] == payload
    assert doc["sha256"] == sha
    assert not path.with_name("thing.json.tmp").exists()


def test_write_twice_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    write_artifact(a, "demo-artifact", {"x": [1, 2]})
    write_artifact(b, "demo-artifact", {"x": [1, 2]})
    assert a.read_bytes() == b.read_bytes()


def test_read_missing_file(tmp_path):
    with pytest.raises(DataError, match="not found"):
        read_artifact(tmp_path / "absent.json", "demo-artifact")


def test_read_wrong_kind(tmp_path):
    path = tmp_path / "thing.json"
    write_artifact(path, "kind-a", {"x": 1})
    with pytest.raises(DataError, match="kind-b"):
        read_artifact(path, "kind-b")


def test_read_detects_tampering(tmp_path):
    path = tmp_path / "thing.json"
    write_artifact(path, "demo-artifact", {"x": 1})
    doc = json.loads(path.read_text())
    doc["payload"]["x"] = 2
    path.write_text(json.dumps(doc))
    with pytest.raises(DataError, match="hash mismatch"):
        read_artifact(path, "demo-artifact")


def test_read_rejects_unknown_version(tmp_path):
    path = tmp_path / "thing.json"
    write_artifact(path, "demo-artifact", {"x": 1})
    doc = json.loads(path.read_text())
    doc["version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(DataError, match="version"):
        read_artifact(path, "demo-artifact")


def test_read_rejects_invalid_json(tmp_path):
    path = tmp_path / "thing.json"
    path.write_text("{not json")
    with pytest.raises(DataError, match="unreadable"):
        read_artifact(path, "demo-artifact")
