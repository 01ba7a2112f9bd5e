"""Corpus ingestion: load documents, tokenize, build a vocabulary, and split
each document into a fixed number of equal chunks.

The bundle pipeline runs in this order: tokenize, build vocabulary over the
per-document token sequences, re-encode each document (dropping
out-of-vocabulary tokens), then chunk the encoded sequence.  Chunking last
keeps the balance guarantee (chunk lengths differ by at most 1) true for the
token sequences that are actually modeled.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .artifacts import payload_hash, read_artifact, write_artifact
from .errors import ConfigError, DataError, NotFoundError
from .stopwords import ENGLISH_STOPWORDS

BUNDLE_FORMAT = "themescope-corpus-bundle"

DEFAULT_CHUNK_COUNT = 30
DEFAULT_MIN_DF = 2
DEFAULT_MAX_DF_FRACTION = 0.9
DEFAULT_MIN_TOKEN_LENGTH = 3


@dataclass(frozen=True)
class Document:
    """One corpus item. Titles are hidden by default everywhere downstream."""

    doc_id: str
    title: str
    body: str
    metadata: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Chunk:
    doc_id: str
    index: int
    tokens: tuple[int, ...]  # vocabulary term ids


@dataclass(frozen=True)
class TokenizeRules:
    """Case-folding + alphabetic runs of a minimum length, minus stopwords."""

    min_token_length: int = DEFAULT_MIN_TOKEN_LENGTH
    stopwords: frozenset[str] = ENGLISH_STOPWORDS


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]            # term id -> term, sorted ascending
    doc_frequency: tuple[int, ...]    # term id -> number of documents
    stopwords: tuple[str, ...]        # the list the tokenizer used, sorted
    min_df: int
    max_df_fraction: float

    def __post_init__(self):
        object.__setattr__(self, "_term_to_id",
                           {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def term_id(self, term: str) -> int | None:
        return self._term_to_id.get(term)

    def encode(self, tokens: list[str]) -> list[int]:
        """Map tokens to term ids, dropping out-of-vocabulary tokens."""
        t2i = self._term_to_id
        return [t2i[t] for t in tokens if t in t2i]

    @property
    def content_hash(self) -> str:
        """Hash of the term list; links model artifacts back to this bundle."""
        return payload_hash(list(self.terms))


def load_corpus(source: str | Path, fmt: str | None = None) -> list[Document]:
    """Load all documents from a manifest file or a document directory.

    Formats: "manifest" is a JSONL file whose records carry doc_id, title,
    metadata, and either a body_path (relative to the manifest) or an inline
    body; "dir" is a directory of .json files each holding one such record
    with an inline body.  When fmt is None it is inferred from the path type.
    Returns documents sorted by doc_id.
    """
    source = Path(source)
    if not source.exists():
        raise DataError(f"corpus source not found: {source}")
    if fmt is None:
        fmt = "dir" if source.is_dir() else "manifest"

    if fmt == "manifest":
        records = _read_manifest(source)
    elif fmt == "dir":
        records = _read_directory(source)
    else:
        raise ConfigError(f"unknown corpus format: {fmt!r}")

    docs: list[Document] = []
    seen: set[str] = set()
    for origin, rec in records:
        doc = _record_to_document(origin, rec, source)
        if doc.doc_id in seen:
            raise DataError(f"duplicate doc_id {doc.doc_id!r} in {origin}")
        seen.add(doc.doc_id)
        docs.append(doc)
    docs.sort(key=lambda d: d.doc_id)
    return docs


def _read_manifest(path: Path) -> list[tuple[str, dict]]:
    records = []
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"unreadable manifest {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: invalid JSON record: {exc}") from exc
        records.append((f"{path}:{lineno}", rec))
    return records


def _read_directory(path: Path) -> list[tuple[str, dict]]:
    records = []
    for file in sorted(path.glob("*.json")):
        try:
            rec = json.loads(file.read_text(encoding="utf-8"))
        except (OSError, ValueError, UnicodeDecodeError) as exc:
            raise DataError(f"unreadable document file {file}: {exc}") from exc
        records.append((str(file), rec))
    return records


def _record_to_document(origin: str, rec: dict, source: Path) -> Document:
    if not isinstance(rec, dict) or not rec.get("doc_id"):
        raise DataError(f"{origin}: record is missing doc_id")
    doc_id = str(rec["doc_id"])
    if "title" not in rec:
        raise DataError(f"{origin}: record {doc_id!r} is missing title")
    if "body" in rec:
        body = rec["body"]
    elif "body_path" in rec:
        body_path = (source.parent if source.is_file() else source) / rec["body_path"]
        try:
            body = body_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise DataError(f"unreadable body file {body_path} "
                            f"(document {doc_id!r}): {exc}") from exc
    else:
        raise DataError(f"{origin}: record {doc_id!r} has neither body nor body_path")
    if not str(body).strip():
        raise DataError(f"{origin}: document {doc_id!r} has an empty body")
    metadata = rec.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise DataError(f"{origin}: metadata of {doc_id!r} must be an object")
    return Document(doc_id=doc_id, title=str(rec["title"]), body=str(body),
                    metadata={str(k): str(v) for k, v in metadata.items()})


_TOKEN_RE = re.compile(r"[a-z]+")


def tokenize(text: str, rules: TokenizeRules = TokenizeRules()) -> list[str]:
    """Lowercased alphabetic runs of at least min_token_length, stopwords removed."""
    return [tok for tok in _TOKEN_RE.findall(text.lower())
            if len(tok) >= rules.min_token_length and tok not in rules.stopwords]


def chunk_tokens(tokens: list[int], c: int) -> list[list[int]]:
    """Split a token sequence into c order-preserving chunks whose lengths
    differ by at most 1; remainder tokens go to the earliest chunks."""
    if c < 1:
        raise ConfigError(f"chunk count must be >= 1, got {c}")
    if len(tokens) < c:
        raise DataError(f"cannot split {len(tokens)} tokens into {c} chunks")
    base, extra = divmod(len(tokens), c)
    chunks = []
    pos = 0
    for i in range(c):
        size = base + (1 if i < extra else 0)
        chunks.append(tokens[pos:pos + size])
        pos += size
    return chunks


def chunk_document(doc_id: str, encoded_tokens: list[int], c: int) -> list[Chunk]:
    return [Chunk(doc_id=doc_id, index=i, tokens=tuple(part))
            for i, part in enumerate(chunk_tokens(encoded_tokens, c))]


def build_vocabulary(doc_tokens: dict[str, list[str]],
                     min_df: int = DEFAULT_MIN_DF,
                     max_df_fraction: float = DEFAULT_MAX_DF_FRACTION,
                     stopwords: frozenset[str] = ENGLISH_STOPWORDS) -> Vocabulary:
    """Keep terms whose document frequency lies in [min_df, max_df_fraction*N].

    Takes per-document token sequences (not chunks) so that document
    frequency is counted at the document level and chunking can happen after
    out-of-vocabulary removal.
    """
    if min_df < 1:
        raise ConfigError(f"min_df must be >= 1, got {min_df}")
    if not 0 < max_df_fraction <= 1:
        raise ConfigError(f"max_df_fraction must be in (0, 1], got {max_df_fraction}")
    df: dict[str, int] = {}
    for tokens in doc_tokens.values():
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    max_df = max_df_fraction * len(doc_tokens)
    kept = sorted(t for t, n in df.items() if min_df <= n <= max_df)
    if not kept:
        raise ConfigError(
            f"vocabulary is empty with min_df={min_df}, "
            f"max_df_fraction={max_df_fraction} over {len(doc_tokens)} documents")
    return Vocabulary(terms=tuple(kept),
                      doc_frequency=tuple(df[t] for t in kept),
                      stopwords=tuple(sorted(stopwords)),
                      min_df=min_df,
                      max_df_fraction=max_df_fraction)


@dataclass(frozen=True)
class BundleConfig:
    chunk_count: int = DEFAULT_CHUNK_COUNT
    min_df: int = DEFAULT_MIN_DF
    max_df_fraction: float = DEFAULT_MAX_DF_FRACTION
    min_token_length: int = DEFAULT_MIN_TOKEN_LENGTH


@dataclass(frozen=True)
class CorpusBundle:
    """Everything the topic model needs: vocabulary plus encoded chunks."""

    config: BundleConfig
    vocabulary: Vocabulary
    documents: tuple[Document, ...]          # modeled documents, doc_id order
    chunks: tuple[Chunk, ...]                # document order x chunk index
    excluded: tuple[tuple[str, int], ...]    # (doc_id, encoded token count)

    @property
    def vocab_hash(self) -> str:
        return self.vocabulary.content_hash

    def document(self, doc_id: str) -> Document:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        raise NotFoundError(f"unknown doc_id: {doc_id!r}")


def build_bundle(corpus: list[Document],
                 config: BundleConfig = BundleConfig(),
                 rules: TokenizeRules | None = None) -> CorpusBundle:
    """Run the full ingest pipeline over loaded documents.

    Documents with fewer than chunk_count in-vocabulary tokens are excluded
    from modeling and reported in the bundle's excluded list.
    """
    if not corpus:
        raise DataError("corpus is empty")
    if rules is None:
        rules = TokenizeRules(min_token_length=config.min_token_length)
    tokenized = {doc.doc_id: tokenize(doc.body, rules) for doc in corpus}
    vocab = build_vocabulary(tokenized, config.min_df, config.max_df_fraction,
                             rules.stopwords)

    by_id = {doc.doc_id: doc for doc in corpus}
    modeled: list[Document] = []
    chunks: list[Chunk] = []
    excluded: list[tuple[str, int]] = []
    for doc_id in sorted(tokenized):
        encoded = vocab.encode(tokenized[doc_id])
        if len(encoded) < config.chunk_count:
            excluded.append((doc_id, len(encoded)))
            continue
        modeled.append(by_id[doc_id])
        chunks.extend(chunk_document(doc_id, encoded, config.chunk_count))
    if not modeled:
        raise DataError("no document has enough tokens to be chunked; "
                        f"chunk_count={config.chunk_count}")
    return CorpusBundle(config=config, vocabulary=vocab,
                        documents=tuple(modeled), chunks=tuple(chunks),
                        excluded=tuple(excluded))


def bundle_payload(bundle: CorpusBundle) -> dict:
    cfg = bundle.config
    return {
        "config": {
            "chunk_count": cfg.chunk_count,
            "min_df": cfg.min_df,
            "max_df_fraction": cfg.max_df_fraction,
            "min_token_length": cfg.min_token_length,
        },
        "vocabulary": {
            "terms": list(bundle.vocabulary.terms),
            "doc_frequency": list(bundle.vocabulary.doc_frequency),
            "stopwords": list(bundle.vocabulary.stopwords),
            "min_df": bundle.vocabulary.min_df,
            "max_df_fraction": bundle.vocabulary.max_df_fraction,
        },
        "documents": [
            {"doc_id": d.doc_id, "title": d.title, "metadata": d.metadata}
            for d in bundle.documents
        ],
        "chunks": [
            {"doc_id": ch.doc_id, "index": ch.index, "tokens": list(ch.tokens)}
            for ch in bundle.chunks
        ],
        "excluded": [
            {"doc_id": doc_id, "token_count": n} for doc_id, n in bundle.excluded
        ],
    }


def save_bundle(bundle: CorpusBundle, path: str | Path) -> str:
    return write_artifact(path, BUNDLE_FORMAT, bundle_payload(bundle))


def load_bundle(path: str | Path) -> CorpusBundle:
    payload = read_artifact(path, BUNDLE_FORMAT)["payload"]
    cfg = BundleConfig(
        chunk_count=payload["config"]["chunk_count"],
        min_df=payload["config"]["min_df"],
        max_df_fraction=payload["config"]["max_df_fraction"],
        min_token_length=payload["config"]["min_token_length"],
    )
    v = payload["vocabulary"]
    vocab = Vocabulary(terms=tuple(v["terms"]),
                       doc_frequency=tuple(v["doc_frequency"]),
                       stopwords=tuple(v["stopwords"]),
                       min_df=v["min_df"],
                       max_df_fraction=v["max_df_fraction"])
    documents = tuple(
        Document(doc_id=d["doc_id"], title=d["title"], body="",
                 metadata=dict(d.get("metadata") or {}))
        for d in payload["documents"]
    )
    chunks = tuple(
        Chunk(doc_id=c["doc_id"], index=c["index"], tokens=tuple(c["tokens"]))
        for c in payload["chunks"]
    )
    excluded = tuple((e["doc_id"], e["token_count"]) for e in payload["excluded"])
    return CorpusBundle(config=cfg, vocabulary=vocab, documents=documents,
                        chunks=chunks, excluded=excluded)
