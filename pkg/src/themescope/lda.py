"""Latent Dirichlet allocation over corpus chunks, trained by collapsed
Gibbs sampling.

The sampling unit is the chunk: each token's topic is resampled from

    p(z = k) propto (n_chunk,k + alpha) * (n_k,w + beta) / (n_k + V*beta)

where the counts exclude the token being resampled.  Runs are reproducible:
all randomness comes from numpy's PCG64 generator seeded explicitly, and the
inner loop consumes one pre-drawn uniform per token per sweep, so two runs
with identical inputs and seed produce bitwise-identical models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.special import gammaln

from .artifacts import read_artifact, write_artifact
from .corpus import CorpusBundle
from .errors import ConfigError, DataError, NotFoundError, ThemescopeError

MODEL_FORMAT = "themescope-topic-model"

DEFAULT_TOPICS = 85
DEFAULT_BETA = 0.01
DEFAULT_ITERATIONS = 1000


def default_alpha(k: int) -> float:
    return 50.0 / k


@dataclass(frozen=True)
class Theme:
    theme_id: int
    top_terms: tuple[tuple[str, float], ...]  # sorted by weight descending
    auto_label: str                           # top-3 terms joined


@dataclass(frozen=True)
class PaperThemeDistribution:
    doc_id: str
    weights: np.ndarray  # K-vector, mean of the document's chunk rows


@dataclass
class TopicModel:
    k: int
    alpha: float
    beta: float
    iterations: int
    seed: int
    phi: np.ndarray           # (K, V) topic-word probabilities
    theta_chunk: np.ndarray   # (M, K) chunk-topic probabilities
    assignments: np.ndarray   # final topic label per token
    doc_theme_tokens: np.ndarray  # (n_docs, K) tokens assigned per theme
    log_likelihood: list[float]  # one entry per sweep
    vocab_hash: str
    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    chunk_count: int          # chunks per document (C)
    content_hash: str | None = None
    _doc_index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._doc_index:
            self._doc_index.update({d: i for i, d in enumerate(self.doc_ids)})

    @property
    def n_chunks(self) -> int:
        return self.theta_chunk.shape[0]

    def doc_index(self, doc_id: str) -> int:
        try:
            return self._doc_index[doc_id]
        except KeyError:
            raise NotFoundError(f"document {doc_id!r} is not in the model") from None

    def chunk_rows(self, doc_id: str) -> np.ndarray:
        """Row indices into theta_chunk for one document, in chunk order."""
        start = self.doc_index(doc_id) * self.chunk_count
        return np.arange(start, start + self.chunk_count)

    def theta_smoothing_floor(self) -> float:
        """Smallest theta value Dirichlet smoothing can produce for a chunk
        with zero tokens on a theme; used to flag trace-only intensities."""
        tokens_per_chunk = self.assignments.shape[0] / self.n_chunks
        return self.alpha / (tokens_per_chunk + self.k * self.alpha)


@njit(cache=True)
def _gibbs_sweep(z, token_chunk, token_word, n_ck, n_kw, n_k,
                 alpha, beta, v_beta, uniforms, probs):
    k_total = n_k.shape[0]
    for i in range(z.shape[0]):
        m = token_chunk[i]
        w = token_word[i]
        old = z[i]
        n_ck[m, old] -= 1
        n_kw[old, w] -= 1
        n_k[old] -= 1
        total = 0.0
        for k in range(k_total):
            p = (n_ck[m, k] + alpha) * (n_kw[k, w] + beta) / (n_k[k] + v_beta)
            probs[k] = p
            total += p
        r = uniforms[i] * total
        acc = 0.0
        new = k_total - 1
        for k in range(k_total):
            acc += probs[k]
            if r < acc:
                new = k
                break
        z[i] = new
        n_ck[m, new] += 1
        n_kw[new, w] += 1
        n_k[new] += 1


def _joint_log_likelihood(n_ck, n_kw, n_k, n_chunk_tokens, alpha, beta):
    """log p(w, z) under the collapsed model (Dirichlet-multinomial form)."""
    k, v = n_kw.shape
    m = n_ck.shape[0]
    lw = k * (gammaln(v * beta) - v * gammaln(beta))
    lw += gammaln(n_kw + beta).sum() - gammaln(n_k + v * beta).sum()
    lz = m * (gammaln(k * alpha) - k * gammaln(alpha))
    lz += gammaln(n_ck + alpha).sum() - gammaln(n_chunk_tokens + k * alpha).sum()
    return float(lw + lz)


def train_lda(bundle: CorpusBundle,
              k: int = DEFAULT_TOPICS,
              alpha: float | None = None,
              beta: float = DEFAULT_BETA,
              iterations: int = DEFAULT_ITERATIONS,
              seed: int = 0,
              progress=None) -> TopicModel:
    """Train a topic model on a corpus bundle.

    alpha defaults to 50/k.  phi and theta are point estimates from the
    final sweep's counts with prior smoothing.  `progress`, if given, is
    called as progress(sweep, iterations, log_likelihood) after each sweep.
    """
    if not bundle.chunks:
        raise DataError("corpus bundle has no chunks")
    v = len(bundle.vocabulary)
    if k < 2:
        raise ConfigError(f"topic count must be >= 2, got {k}")
    if k > v:
        raise ConfigError(f"topic count {k} exceeds vocabulary size {v}")
    if alpha is None:
        alpha = default_alpha(k)
    if alpha <= 0 or beta <= 0:
        raise ConfigError("alpha and beta must be positive")
    if iterations < 1:
        raise ConfigError(f"iterations must be >= 1, got {iterations}")

    token_chunk = np.concatenate(
        [np.full(len(ch.tokens), i, dtype=np.int32)
         for i, ch in enumerate(bundle.chunks)])
    token_word = np.concatenate(
        [np.asarray(ch.tokens, dtype=np.int32) for ch in bundle.chunks])
    n_tokens = token_word.shape[0]
    m = len(bundle.chunks)

    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.integers(0, k, size=n_tokens, dtype=np.int32)

    n_ck = np.zeros((m, k), dtype=np.int64)
    np.add.at(n_ck, (token_chunk, z), 1)
    n_kw = np.zeros((k, v), dtype=np.int64)
    np.add.at(n_kw, (z, token_word), 1)
    n_k = np.bincount(z, minlength=k).astype(np.int64)
    n_chunk_tokens = np.bincount(token_chunk, minlength=m).astype(np.int64)

    probs = np.empty(k, dtype=np.float64)
    log_likelihood: list[float] = []
    for sweep in range(iterations):
        uniforms = rng.random(n_tokens)
        _gibbs_sweep(z, token_chunk, token_word, n_ck, n_kw, n_k,
                     alpha, beta, v * beta, uniforms, probs)
        if int(n_k.sum()) != n_tokens:
            raise ThemescopeError(
                f"count bookkeeping out of sync at sweep {sweep}: "
                f"{int(n_k.sum())} != {n_tokens}")
        ll = _joint_log_likelihood(n_ck, n_kw, n_k, n_chunk_tokens, alpha, beta)
        log_likelihood.append(ll)
        if progress is not None:
            progress(sweep + 1, iterations, ll)

    phi_num = n_kw + beta
    phi = phi_num / phi_num.sum(axis=1, keepdims=True)
    theta_num = n_ck + alpha
    theta = theta_num / theta_num.sum(axis=1, keepdims=True)

    chunks_per_doc = bundle.config.chunk_count
    token_doc = token_chunk // chunks_per_doc
    doc_theme = np.zeros((len(bundle.documents), k), dtype=np.int64)
    np.add.at(doc_theme, (token_doc, z), 1)

    return TopicModel(
        k=k, alpha=alpha, beta=beta, iterations=iterations, seed=seed,
        phi=phi, theta_chunk=theta, assignments=z,
        doc_theme_tokens=doc_theme,
        log_likelihood=log_likelihood,
        vocab_hash=bundle.vocab_hash,
        terms=bundle.vocabulary.terms,
        doc_ids=tuple(d.doc_id for d in bundle.documents),
        chunk_count=bundle.config.chunk_count,
    )


def top_words(model: TopicModel, theme_id: int, n: int = 10) -> Theme:
    """The n highest-weight terms for a theme; ties break to the lower term id."""
    if not 0 <= theme_id < model.k:
        raise NotFoundError(f"theme id {theme_id} out of range [0, {model.k})")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    row = model.phi[theme_id]
    order = np.argsort(-row, kind="stable")[:n]
    terms = tuple((model.terms[i], float(row[i])) for i in order)
    return Theme(theme_id=theme_id, top_terms=terms,
                 auto_label=" ".join(t for t, _ in terms[:3]))


def paper_distribution(model: TopicModel, doc_id: str) -> PaperThemeDistribution:
    """Arithmetic mean of the document's chunk theta rows."""
    rows = model.chunk_rows(doc_id)
    return PaperThemeDistribution(doc_id=doc_id,
                                  weights=model.theta_chunk[rows].mean(axis=0))


def all_paper_distributions(model: TopicModel) -> np.ndarray:
    """(n_docs, K) matrix of paper-level theme weights, in doc_ids order."""
    n_docs = len(model.doc_ids)
    return model.theta_chunk.reshape(n_docs, model.chunk_count, model.k).mean(axis=1)


def model_payload(model: TopicModel) -> dict:
    return {
        "k": model.k,
        "alpha": model.alpha,
        "beta": model.beta,
        "iterations": model.iterations,
        "seed": model.seed,
        "vocab_hash": model.vocab_hash,
        "terms": list(model.terms),
        "doc_ids": list(model.doc_ids),
        "chunk_count": model.chunk_count,
        "phi": model.phi.tolist(),
        "theta_chunk": model.theta_chunk.tolist(),
        "assignments": model.assignments.tolist(),
        "doc_theme_tokens": model.doc_theme_tokens.tolist(),
        "log_likelihood": list(model.log_likelihood),
    }


def save_model(model: TopicModel, path) -> str:
    content_hash = write_artifact(path, MODEL_FORMAT, model_payload(model))
    model.content_hash = content_hash
    return content_hash


def load_model(path) -> TopicModel:
    doc = read_artifact(path, MODEL_FORMAT)
    p = doc["payload"]
    return TopicModel(
        k=p["k"], alpha=p["alpha"], beta=p["beta"],
        iterations=p["iterations"], seed=p["seed"],
        phi=np.asarray(p["phi"], dtype=np.float64),
        theta_chunk=np.asarray(p["theta_chunk"], dtype=np.float64),
        assignments=np.asarray(p["assignments"], dtype=np.int32),
        doc_theme_tokens=np.asarray(p["doc_theme_tokens"], dtype=np.int64),
        log_likelihood=list(p["log_likelihood"]),
        vocab_hash=p["vocab_hash"],
        terms=tuple(p["terms"]),
        doc_ids=tuple(p["doc_ids"]),
        chunk_count=p["chunk_count"],
        content_hash=doc["sha256"],
    )
