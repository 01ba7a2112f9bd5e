"""Excerpt maps: a truncated thematic map for a selected paper set.

Only themes that carry real weight in at least one selected paper are
kept.  Similarity between the kept themes is recomputed over the whole
corpus (a handful of papers is too sparse a co-occurrence signal), then
the subset is re-clustered, re-laid-out, and given a fresh palette.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError
from .lda import TopicModel, all_paper_distributions, top_words
from .thememap import (DEFAULT_TAU, ThemeMap, agglomerative_cluster,
                       hex_layout, map_payload, theme_cooccurrence)

DEFAULT_THETA_MIN = 0.05
DEFAULT_MAX_SELECTION = 6


@dataclass(frozen=True)
class ThemeProvenance:
    theme_id: int
    witnesses: tuple[tuple[str, float], ...]  # (doc_id, weight >= theta_min)


@dataclass(frozen=True)
class ExcerptMap:
    selection: tuple[str, ...]
    theta_min: float
    theme_ids: tuple[int, ...]              # kept themes, ascending global ids
    provenance: tuple[ThemeProvenance, ...]
    map: ThemeMap                           # tree/layout over the subset


def extract_relevant_themes(model: TopicModel, selection,
                            theta_min: float = DEFAULT_THETA_MIN,
                            max_selection: int = DEFAULT_MAX_SELECTION
                            ) -> tuple[ThemeProvenance, ...]:
    """Themes with paper-level weight >= theta_min in >= 1 selected paper.

    Returns one provenance record per kept theme, ascending by theme id,
    each listing every (paper, weight) pair that justified inclusion,
    in selection order.
    """
    selection = list(selection)
    if not selection:
        raise DataError("selection is empty")
    if len(selection) > max_selection:
        raise DataError(
            f"selection of {len(selection)} exceeds the maximum of "
            f"{max_selection}")
    if len(set(selection)) != len(selection):
        raise DataError("selection contains duplicate doc ids")
    if theta_min <= 0:
        raise ConfigError(f"inclusion threshold must be > 0, got {theta_min}")
    doc_rows = np.stack([all_paper_distributions(model)[model.doc_index(d)]
                         for d in selection])
    kept = []
    for theme in range(model.k):
        witnesses = tuple(
            (selection[i], float(doc_rows[i, theme]))
            for i in range(len(selection))
            if doc_rows[i, theme] >= theta_min)
        if witnesses:
            kept.append(ThemeProvenance(theme_id=theme, witnesses=witnesses))
    return tuple(kept)


def build_excerpt_map(model: TopicModel, theme_ids,
                      tau: float = DEFAULT_TAU,
                      clusters: int | None = None,
                      top_terms: int = 30) -> ThemeMap:
    """Cluster and lay out a theme subset with similarity recomputed over
    the full corpus restricted to those themes; colors assigned fresh."""
    theme_ids = sorted(set(int(t) for t in theme_ids))
    if not theme_ids:
        raise DataError("theme subset is empty")
    for t in theme_ids:
        if not 0 <= t < model.k:
            raise DataError(f"theme id {t} out of range [0, {model.k})")
    weights = all_paper_distributions(model)[:, theme_ids]
    sim = theme_cooccurrence(weights, tau)
    tree = agglomerative_cluster(sim.matrix, target=clusters)
    layout = hex_layout(tree)
    themes = tuple(top_words(model, t, top_terms) for t in theme_ids)
    empty = tuple(theme_ids[i] for i in sim.empty_themes)
    return ThemeMap(tau=tau, similarity=sim.matrix, empty_themes=empty,
                    tree=tree, layout=layout, themes=themes,
                    model_hash=model.content_hash)


def excerpt_map_for_selection(model: TopicModel, selection,
                              theta_min: float = DEFAULT_THETA_MIN,
                              tau: float = DEFAULT_TAU,
                              clusters: int | None = None,
                              max_selection: int = DEFAULT_MAX_SELECTION
                              ) -> ExcerptMap:
    provenance = extract_relevant_themes(model, selection,
                                         theta_min=theta_min,
                                         max_selection=max_selection)
    theme_ids = tuple(p.theme_id for p in provenance)
    tmap = build_excerpt_map(model, theme_ids, tau=tau, clusters=clusters)
    return ExcerptMap(selection=tuple(selection), theta_min=theta_min,
                      theme_ids=theme_ids, provenance=provenance, map=tmap)


def excerpt_payload(excerpt: ExcerptMap) -> dict:
    payload = map_payload(excerpt.map)
    payload["selection"] = list(excerpt.selection)
    payload["theta_min"] = excerpt.theta_min
    payload["provenance"] = [
        {
            "theme_id": p.theme_id,
            "witnesses": [[doc_id, weight] for doc_id, weight in p.witnesses],
        }
        for p in excerpt.provenance
    ]
    return payload
