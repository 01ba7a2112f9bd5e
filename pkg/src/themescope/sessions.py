"""Single-file session store.

Sessions carry a user's paper selection, reading strategy, and title-reveal
state, plus a snapshot of the config they were created under.  The store is
one JSON file rewritten atomically (write temp, rename) on every mutation,
so a crash never leaves a torn file.  Mutations validate first and raise
before touching state: a rejected update leaves the stored bytes unchanged.

A session whose model hash differs from the store's current model is opened
read-only; its history stays inspectable but no mutation is accepted.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from .errors import DataError, NotFoundError, ReadOnlyError

STORE_FORMAT = "themescope-sessions"
STORE_VERSION = 1
DEFAULT_MAX_SELECTION = 6


@dataclass(frozen=True)
class StrategyEntry:
    doc_id: str
    rank: int                              # 1-based reading order
    note: str
    segments: tuple[tuple[int, int], ...]  # inclusive chunk ranges to read


@dataclass(frozen=True)
class Session:
    session_id: str
    created: str
    updated: str
    selection: tuple[str, ...]
    strategy: tuple[StrategyEntry, ...]
    titles_revealed: bool
    config: dict  # theta_min, tau, chunk_count, k, model_hash snapshot


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def session_payload(session: Session) -> dict:
    return {
        "session_id": session.session_id,
        "created": session.created,
        "updated": session.updated,
        "selection": list(session.selection),
        "strategy": [
            {
                "doc_id": e.doc_id,
                "rank": e.rank,
                "note": e.note,
                "segments": [[a, b] for a, b in e.segments],
            }
            for e in session.strategy
        ],
        "titles_revealed": session.titles_revealed,
        "config": dict(session.config),
    }


def _session_from_payload(p: dict) -> Session:
    return Session(
        session_id=p["session_id"],
        created=p["created"],
        updated=p["updated"],
        selection=tuple(p["selection"]),
        strategy=tuple(
            StrategyEntry(doc_id=e["doc_id"], rank=e["rank"], note=e["note"],
                          segments=tuple((a, b) for a, b in e["segments"]))
            for e in p["strategy"]),
        titles_revealed=p["titles_revealed"],
        config=dict(p["config"]),
    )


class SessionStore:
    """Sessions keyed by id, persisted to one JSON file.

    `config` is snapshotted into each new session; its model_hash decides
    whether an existing session is writable.  `known_docs`, when given,
    validates selections against the modeled corpus.
    """

    def __init__(self, path, config: dict | None = None,
                 known_docs=None,
                 max_selection: int = DEFAULT_MAX_SELECTION):
        self.path = Path(path)
        self.config = dict(config or {})
        self.known_docs = set(known_docs) if known_docs is not None else None
        self.max_selection = max_selection
        self._lock = threading.RLock()
        self._sessions: dict[str, Session] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        try:
            raw = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"cannot read session store {self.path}: {exc}")
        if raw.get("format") != STORE_FORMAT:
            raise DataError(f"{self.path} is not a session store")
        if raw.get("version") != STORE_VERSION:
            raise DataError(
                f"unsupported session store version {raw.get('version')}")
        self._sessions = {
            sid: _session_from_payload(p)
            for sid, p in raw["sessions"].items()
        }

    def _flush(self) -> None:
        doc = {
            "format": STORE_FORMAT,
            "version": STORE_VERSION,
            "sessions": {sid: session_payload(s)
                         for sid, s in sorted(self._sessions.items())},
        }
        data = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(data, encoding="utf-8")
        os.replace(tmp, self.path)

    def _writable(self, session: Session) -> None:
        current = self.config.get("model_hash")
        snapshot = session.config.get("model_hash")
        if current is not None and snapshot != current:
            raise ReadOnlyError(
                f"session {session.session_id} was created against a "
                f"different model and is read-only")

    def list_sessions(self) -> list[Session]:
        with self._lock:
            return [self._sessions[sid] for sid in sorted(self._sessions)]

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise NotFoundError(f"no session {session_id!r}") from None

    def create_session(self) -> Session:
        with self._lock:
            now = _now()
            session = Session(
                session_id=uuid.uuid4().hex,
                created=now,
                updated=now,
                selection=(),
                strategy=(),
                titles_revealed=False,
                config=dict(self.config),
            )
            self._sessions[session.session_id] = session
            self._flush()
            return session

    def update_selection(self, session_id: str, doc_ids) -> Session:
        """Replace the selection; rejects leave the session untouched.

        Changing the selection drops any saved strategy entries that no
        longer refer to selected papers (ranks are reassigned compactly to
        keep the permutation invariant).
        """
        doc_ids = list(doc_ids)
        with self._lock:
            session = self.get(session_id)
            self._writable(session)
            if len(doc_ids) > self.max_selection:
                raise DataError(
                    f"selection of {len(doc_ids)} exceeds the maximum of "
                    f"{self.max_selection}")
            if len(set(doc_ids)) != len(doc_ids):
                raise DataError("selection contains duplicate doc ids")
            if self.known_docs is not None:
                unknown = [d for d in doc_ids if d not in self.known_docs]
                if unknown:
                    raise NotFoundError(
                        f"unknown doc ids in selection: {unknown}")
            kept = [e for e in session.strategy if e.doc_id in set(doc_ids)]
            kept.sort(key=lambda e: e.rank)
            strategy = tuple(replace(e, rank=i + 1)
                             for i, e in enumerate(kept))
            session = replace(session, selection=tuple(doc_ids),
                              strategy=strategy, updated=_now())
            self._sessions[session_id] = session
            self._flush()
            return session

    def save_strategy(self, session_id: str, entries) -> Session:
        """Replace the reading strategy.

        Entries must reference selected papers only, one entry per paper at
        most, with ranks forming a permutation of 1..len(entries) and chunk
        ranges within the modeled chunk count.
        """
        entries = tuple(entries)
        with self._lock:
            session = self.get(session_id)
            self._writable(session)
            selected = set(session.selection)
            seen_docs = set()
            chunk_count = self.config.get("chunk_count")
            for e in entries:
                if e.doc_id not in selected:
                    raise DataError(
                        f"strategy references unselected paper {e.doc_id!r}")
                if e.doc_id in seen_docs:
                    raise DataError(
                        f"strategy lists paper {e.doc_id!r} twice")
                seen_docs.add(e.doc_id)
                for start, end in e.segments:
                    if start < 0 or end < start:
                        raise DataError(
                            f"bad chunk range [{start}, {end}] for "
                            f"{e.doc_id!r}")
                    if chunk_count is not None and end >= chunk_count:
                        raise DataError(
                            f"chunk range [{start}, {end}] exceeds chunk "
                            f"count {chunk_count}")
            if sorted(e.rank for e in entries) != list(range(1, len(entries) + 1)):
                raise DataError(
                    "strategy ranks must form a permutation of "
                    f"1..{len(entries)}")
            ordered = tuple(sorted(entries, key=lambda e: e.rank))
            session = replace(session, strategy=ordered, updated=_now())
            self._sessions[session_id] = session
            self._flush()
            return session

    def reveal_titles(self, session_id: str) -> Session:
        """One-way flip; revealing an already revealed session is a no-op."""
        with self._lock:
            session = self.get(session_id)
            self._writable(session)
            if not session.titles_revealed:
                session = replace(session, titles_revealed=True,
                                  updated=_now())
                self._sessions[session_id] = session
                self._flush()
            return session
