"""Per-paper theme wheels and theme-relevance rankings.

A wheel has one segment per chunk, in reading order, drawn clockwise from
twelve o'clock.  The multi-theme variant colors each segment by the
dominant theme's cluster; the single-theme variant reports one theme's
weight in every chunk, flagging weights near the Dirichlet smoothing floor
as trace-only so renderers can leave those segments empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NotFoundError
from .lda import TopicModel, all_paper_distributions
from .thememap import ThemeMap

TRACE_FLOOR_FACTOR = 1.5
DEFAULT_TOP_PAPERS = 10


@dataclass(frozen=True)
class WheelSegment:
    chunk_index: int
    theme_id: int      # dominant theme (multi) or the queried theme (single)
    weight: float      # dominant theta (multi) or the theme's theta (single)
    color: str | None
    trace_only: bool = False


@dataclass(frozen=True)
class ThemeWheel:
    doc_id: str
    variant: str                        # "multi" or "single"
    theme_id: int | None                # set for the single variant
    segments: tuple[WheelSegment, ...]  # chunk order, clockwise from top


@dataclass(frozen=True)
class PaperRelevance:
    doc_id: str
    theme_id: int
    relevance_percent: float


def build_multi_theme_wheel(model: TopicModel, doc_id: str,
                            tmap: ThemeMap) -> ThemeWheel:
    """One segment per chunk, colored by the dominant theme's cluster.

    Dominance ties break to the lower theme id (argmax convention).
    """
    rows = model.theta_chunk[model.chunk_rows(doc_id)]
    dominant = np.argmax(rows, axis=1)
    segments = tuple(
        WheelSegment(
            chunk_index=i,
            theme_id=int(dominant[i]),
            weight=float(rows[i, dominant[i]]),
            color=tmap.theme_color(int(dominant[i])),
        )
        for i in range(rows.shape[0]))
    return ThemeWheel(doc_id=doc_id, variant="multi", theme_id=None,
                      segments=segments)


def build_single_theme_wheel(model: TopicModel, doc_id: str, theme_id: int,
                             tmap: ThemeMap | None = None) -> ThemeWheel:
    """One theme's weight across the paper's chunks.

    Weights below TRACE_FLOOR_FACTOR times the smoothing floor are flagged
    trace_only: smoothing never yields exact zeros, so near-floor values
    mean the theme is absent from the chunk.
    """
    if not 0 <= theme_id < model.k:
        raise NotFoundError(f"theme id {theme_id} out of range [0, {model.k})")
    rows = model.theta_chunk[model.chunk_rows(doc_id)]
    floor = model.theta_smoothing_floor() * TRACE_FLOOR_FACTOR
    color = tmap.theme_color(theme_id) if tmap is not None else None
    segments = tuple(
        WheelSegment(
            chunk_index=i,
            theme_id=theme_id,
            weight=float(rows[i, theme_id]),
            color=color,
            trace_only=bool(rows[i, theme_id] < floor),
        )
        for i in range(rows.shape[0]))
    return ThemeWheel(doc_id=doc_id, variant="single", theme_id=theme_id,
                      segments=segments)


def rank_papers_for_theme(model: TopicModel, theme_id: int,
                          n: int = DEFAULT_TOP_PAPERS) -> list[PaperRelevance]:
    """Top papers for a theme by relevance percentage.

    Relevance is the paper-level mean theta for the theme times 100.  Only
    papers with at least one token assigned to the theme are eligible.
    Sort order is relevance descending, then doc_id ascending.
    """
    if not 0 <= theme_id < model.k:
        raise NotFoundError(f"theme id {theme_id} out of range [0, {model.k})")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    weights = all_paper_distributions(model)[:, theme_id]
    eligible = np.flatnonzero(model.doc_theme_tokens[:, theme_id] > 0)
    ranked = sorted(
        ((model.doc_ids[i], float(weights[i]) * 100.0) for i in eligible),
        key=lambda item: (-item[1], item[0]))
    return [PaperRelevance(doc_id=doc_id, theme_id=theme_id,
                           relevance_percent=pct)
            for doc_id, pct in ranked[:n]]


def wheel_payload(wheel: ThemeWheel) -> dict:
    return {
        "doc_id": wheel.doc_id,
        "variant": wheel.variant,
        "theme_id": wheel.theme_id,
        "segments": [
            {
                "chunk_index": s.chunk_index,
                "theme_id": s.theme_id,
                "weight": s.weight,
                "color": s.color,
                "trace_only": s.trace_only,
            }
            for s in wheel.segments
        ],
    }
