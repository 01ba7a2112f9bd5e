"""Versioned on-disk artifacts with content hashes.

Every pipeline stage (bundle, model, layout, session store) is stored as a
single JSON document:

    {"format": <kind>, "version": 1, "sha256": <hex>, "payload": {...}}

The payload is serialized canonically (sorted keys, compact separators,
ASCII) so identical inputs always produce byte-identical files, and the
sha256 is computed over those canonical payload bytes.  Downstream stages
use the hash to verify they were built against the same upstream artifact.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Any

from .errors import DataError

ARTIFACT_VERSION = 1


def canonical_json(obj: Any) -> str:
    """Deterministic JSON encoding: sorted keys, no whitespace, ASCII only."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True, allow_nan=False)


def payload_hash(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("ascii")).hexdigest()


def artifact_bytes(kind: str, payload: Any) -> bytes:
    doc = {
        "format": kind,
        "version": ARTIFACT_VERSION,
        "sha256": payload_hash(payload),
        "payload": payload,
    }
    return (canonical_json(doc) + "\n").encode("ascii")


def write_artifact(path: str | Path, kind: str, payload: Any) -> str:
    """Write an artifact atomically (temp file + rename); returns its hash."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = artifact_bytes(kind, payload)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
    return payload_hash(payload)


def read_artifact(path: str | Path, kind: str) -> dict:
    """Load an artifact, verifying kind, version, and content hash.

    Returns the decoded document (with 'payload' and 'sha256' keys).
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"artifact not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="ascii"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise DataError(f"unreadable artifact {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != kind:
        raise DataError(
            f"{path}: expected a '{kind}' artifact, got {doc.get('format')!r}")
    if doc.get("version") != ARTIFACT_VERSION:
        raise DataError(f"{path}: unsupported artifact version {doc.get('version')!r}")
    actual = payload_hash(doc.get("payload"))
    if actual != doc.get("sha256"):
        raise DataError(f"{path}: content hash mismatch (artifact corrupted?)")
    return doc
