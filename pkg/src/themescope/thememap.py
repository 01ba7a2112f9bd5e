"""Theme similarity, clustering, and the hexagon map.

Theme-theme similarity is the Jaccard overlap of the paper sets in which
each theme is present (paper-level weight >= tau).  Themes are merged by
average-linkage agglomerative clustering, the dendrogram is cut into
clusters, and clusters are placed on a hex grid in merge order so that
similar clusters sit next to each other.  Every step is deterministic:
ties break on theme ids and coordinates, never on hash or insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

import numpy as np

from . import hexgrid
from .artifacts import read_artifact, write_artifact
from .colors import palette
from .errors import ConfigError, DataError, NotFoundError
from .lda import Theme, TopicModel, all_paper_distributions, top_words

THEME_MAP_FORMAT = "themescope-theme-map"
DEFAULT_TAU = 0.05
DEFAULT_TOP_TERMS = 30


@dataclass(frozen=True)
class SimilarityResult:
    matrix: np.ndarray            # (K, K) Jaccard similarities
    tau: float
    empty_themes: tuple[int, ...]  # themes present in no paper at tau


@dataclass(frozen=True)
class Merge:
    left: int    # node ids: leaves are 0..K-1, merge t creates node K+t
    right: int   # left is the side with the smaller minimum theme id
    height: float


@dataclass(frozen=True)
class ClusterTree:
    n_leaves: int
    merges: tuple[Merge, ...]     # K-1 entries, heights non-decreasing
    kept_merges: int              # merges below the cut
    cluster_of: tuple[int, ...]   # cluster id per theme
    n_clusters: int


@dataclass(frozen=True)
class HexLayout:
    coords: tuple[tuple[int, int], ...]          # axial (q, r) per theme
    cluster_of: tuple[int, ...]
    colors: tuple[str, ...]                      # per cluster id
    centroids: tuple[tuple[float, float], ...]   # per cluster id


def theme_cooccurrence(paper_weights: np.ndarray, tau: float = DEFAULT_TAU
                       ) -> SimilarityResult:
    """Jaccard similarity between themes' thresholded paper sets.

    paper_weights is the (n_papers, K) matrix of paper-level theme weights.
    S[i][j] = |P_i & P_j| / |P_i | P_j| with P_k = papers where theme k has
    weight >= tau.  The diagonal is 1 even for themes present nowhere.
    """
    if not 0 < tau < 1:
        raise ConfigError(f"presence threshold must be in (0, 1), got {tau}")
    weights = np.asarray(paper_weights, dtype=np.float64)
    if weights.ndim != 2:
        raise DataError("paper weights must be a 2-d matrix")
    presence = (weights >= tau).astype(np.int64)
    inter = presence.T @ presence
    sizes = np.diag(inter).copy()
    union = sizes[:, None] + sizes[None, :] - inter
    with np.errstate(invalid="ignore", divide="ignore"):
        sim = np.where(union > 0, inter / np.maximum(union, 1), 0.0)
    np.fill_diagonal(sim, 1.0)
    empty = tuple(int(i) for i in np.flatnonzero(sizes == 0))
    return SimilarityResult(matrix=sim, tau=tau, empty_themes=empty)


def _validate_similarity(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise DataError("similarity matrix must be square")
    if not np.allclose(s, s.T, atol=1e-9):
        raise DataError("similarity matrix must be symmetric")
    if not np.allclose(np.diag(s), 1.0, atol=1e-9):
        raise DataError("similarity diagonal must be 1")
    if s.min() < -1e-9 or s.max() > 1 + 1e-9:
        raise DataError("similarity values must lie in [0, 1]")
    return s


def agglomerative_cluster(s: np.ndarray,
                          target: int | None = None,
                          cut_height: float | None = None) -> ClusterTree:
    """Average-linkage clustering of a theme similarity matrix.

    Each step merges the active pair with the highest mean pairwise
    similarity; ties break on the smallest (min theme id of left side,
    min theme id of right side).  Merge height is 1 - linkage similarity,
    clamped so heights never decrease.  The cut keeps `target` clusters
    when given, stops at `cut_height` when given, and otherwise cuts at
    the largest gap between consecutive merge heights.
    """
    s = _validate_similarity(s)
    k = s.shape[0]
    if target is not None and not 1 <= target <= k:
        raise ConfigError(f"cluster target must be in [1, {k}], got {target}")

    members: dict[int, tuple[int, ...]] = {i: (i,) for i in range(k)}
    min_leaf: dict[int, int] = {i: i for i in range(k)}
    sizes: dict[int, int] = {i: 1 for i in range(k)}
    # Pairwise sums of leaf-level similarities; averages are sum/(na*nb).
    sums: dict[tuple[int, int], float] = {}
    for i in range(k):
        for j in range(i + 1, k):
            sums[(i, j)] = float(s[i, j])

    def pair_key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    merges: list[Merge] = []
    active = list(range(k))
    next_id = k
    prev_height = 0.0
    while len(active) > 1:
        best = None
        best_pair = None
        for ia in range(len(active)):
            for ib in range(ia + 1, len(active)):
                a, b = active[ia], active[ib]
                avg = sums[pair_key(a, b)] / (sizes[a] * sizes[b])
                lo, hi = sorted((min_leaf[a], min_leaf[b]))
                key = (-avg, lo, hi)
                if best is None or key < best:
                    best = key
                    best_pair = (a, b) if min_leaf[a] < min_leaf[b] else (b, a)
        left, right = best_pair
        height = max(1.0 - (-best[0]), prev_height)
        prev_height = height
        merges.append(Merge(left=left, right=right, height=height))

        new = next_id
        next_id += 1
        for other in active:
            if other in (left, right):
                continue
            sums[pair_key(new, other)] = (sums[pair_key(left, other)]
                                          + sums[pair_key(right, other)])
        members[new] = tuple(sorted(members[left] + members[right]))
        sizes[new] = sizes[left] + sizes[right]
        min_leaf[new] = min(min_leaf[left], min_leaf[right])
        active = [n for n in active if n not in (left, right)] + [new]

    heights = [m.height for m in merges]
    if target is not None:
        kept = k - target
    elif cut_height is not None:
        kept = sum(1 for h in heights if h <= cut_height)
    elif k < 3:
        kept = k - 1
    else:
        gaps = [heights[j + 1] - heights[j] for j in range(len(heights) - 1)]
        j_star = max(range(len(gaps)), key=lambda j: (gaps[j], -j))
        kept = j_star + 1

    cluster_of, n_clusters = _cut_clusters(k, merges, kept)
    return ClusterTree(n_leaves=k, merges=tuple(merges), kept_merges=kept,
                       cluster_of=cluster_of, n_clusters=n_clusters)


def _cut_clusters(k: int, merges: list[Merge], kept: int
                  ) -> tuple[tuple[int, ...], int]:
    """Cluster ids after replaying the first `kept` merges.

    Ids are assigned in order of each cluster's smallest theme id.
    """
    group: dict[int, set[int]] = {i: {i} for i in range(k)}
    for t in range(kept):
        m = merges[t]
        group[k + t] = group.pop(m.left) | group.pop(m.right)
    clusters = sorted(group.values(), key=min)
    cluster_of = [0] * k
    for cid, themes in enumerate(clusters):
        for theme in themes:
            cluster_of[theme] = cid
    return tuple(cluster_of), len(clusters)


def assign_colors(tree: ClusterTree) -> tuple[str, ...]:
    """One color per cluster id; deterministic for a given cluster count."""
    return palette(tree.n_clusters)


def _find_seat(occupied: dict, anchor: tuple[float, float]) -> tuple[int, int]:
    """Closest free cell to a fractional anchor; ties by (q, r)."""
    center = (round(anchor[0]), round(anchor[1]))
    best = None
    best_cell = None
    for radius in count(0):
        for cell in hexgrid.ring(center, radius):
            if cell in occupied:
                continue
            key = (hexgrid.distance_to_point(cell, anchor), cell[0], cell[1])
            if best is None or key < best:
                best = key
                best_cell = cell
        if best is not None and radius > best[0] + 2:
            return best_cell


def _place_cluster(themes: list[int], seat: tuple[int, int],
                   occupied: dict, coords: dict) -> None:
    """Fill a cluster's themes outward from its seat in spiral order.

    Each theme lands on the free cell adjacent to the cluster that comes
    earliest in the spiral walk around the seat, which keeps the cluster
    connected and, on empty ground, reproduces the plain hex spiral.
    """
    spiral_index: dict[tuple[int, int], int] = {}
    gen = hexgrid.spiral(seat)

    def ensure_radius(radius: int) -> None:
        need = 1 + 3 * radius * (radius + 1)
        while len(spiral_index) < need:
            cell = next(gen)
            spiral_index[cell] = len(spiral_index)

    cells: list[tuple[int, int]] = []
    for theme in themes:
        if not cells:
            cell = seat
        else:
            cands = sorted({nb for c in cells for nb in hexgrid.neighbors(c)
                            if nb not in occupied})
            ensure_radius(max(hexgrid.distance(seat, c) for c in cands))
            cell = min(cands, key=lambda c: spiral_index[c])
        occupied[cell] = theme
        coords[theme] = cell
        cells.append(cell)


def hex_layout(tree: ClusterTree) -> HexLayout:
    """Place every theme on the hex grid.

    Clusters are introduced in dendrogram merge order above the cut, so the
    most similar clusters are placed next to each other first.  A new
    cluster's seat is the free cell nearest the centroid of the already
    placed group it merges with.
    """
    k = tree.n_leaves
    by_cluster: dict[int, list[int]] = {}
    for theme, cid in enumerate(tree.cluster_of):
        by_cluster.setdefault(cid, []).append(theme)

    # Map dendrogram nodes to the cluster ids beneath them.
    node_clusters: dict[int, frozenset[int]] = {
        i: frozenset({tree.cluster_of[i]}) for i in range(k)}
    placement_pairs: list[tuple[frozenset[int], frozenset[int]]] = []
    for t, m in enumerate(tree.merges):
        merged = node_clusters[m.left] | node_clusters[m.right]
        node_clusters[k + t] = merged
        if t >= tree.kept_merges:
            placement_pairs.append((node_clusters[m.left],
                                    node_clusters[m.right]))

    occupied: dict[tuple[int, int], int] = {}
    coords: dict[int, tuple[int, int]] = {}
    cluster_cells: dict[int, list[tuple[int, int]]] = {}
    placed: set[int] = set()

    def group_centroid(cluster_ids) -> tuple[float, float]:
        cells = [c for cid in cluster_ids for c in cluster_cells[cid]]
        return hexgrid.centroid(cells)

    def place(cid: int, anchor: tuple[float, float] | None) -> None:
        seat = (0, 0) if anchor is None else _find_seat(occupied, anchor)
        _place_cluster(by_cluster[cid], seat, occupied, coords)
        cluster_cells[cid] = [coords[t] for t in by_cluster[cid]]
        placed.add(cid)

    for left_set, right_set in placement_pairs:
        for side, other in ((left_set, right_set), (right_set, left_set)):
            pending = sorted(side - placed)
            if not pending:
                continue
            done_other = other & placed
            for cid in pending:
                if done_other:
                    anchor = group_centroid(done_other)
                elif occupied:
                    anchor = hexgrid.centroid(list(occupied))
                else:
                    anchor = None
                place(cid, anchor)

    for cid in sorted(by_cluster):
        if cid not in placed:
            anchor = hexgrid.centroid(list(occupied)) if occupied else None
            place(cid, anchor)

    colors = assign_colors(tree)
    centroids = tuple(hexgrid.centroid(cluster_cells[cid])
                      for cid in range(tree.n_clusters))
    return HexLayout(
        coords=tuple(coords[t] for t in range(k)),
        cluster_of=tree.cluster_of,
        colors=colors,
        centroids=centroids,
    )


@dataclass
class ThemeMap:
    tau: float
    similarity: np.ndarray
    empty_themes: tuple[int, ...]
    tree: ClusterTree
    layout: HexLayout
    themes: tuple[Theme, ...]
    model_hash: str | None = None
    content_hash: str | None = None

    def __post_init__(self):
        # Excerpt maps carry a subset of global theme ids; positions in the
        # tree/layout are local, so color lookups go through this index.
        self._position = {t.theme_id: i for i, t in enumerate(self.themes)}

    @property
    def k(self) -> int:
        return self.tree.n_leaves

    @property
    def theme_ids(self) -> tuple[int, ...]:
        return tuple(t.theme_id for t in self.themes)

    def theme_color(self, theme_id: int) -> str | None:
        """Cluster color for a theme; None if the theme is not on this map."""
        pos = self._position.get(theme_id)
        if pos is None:
            return None
        return self.layout.colors[self.layout.cluster_of[pos]]

    def theme(self, theme_id: int) -> Theme:
        pos = self._position.get(theme_id)
        if pos is None:
            raise NotFoundError(f"theme id {theme_id} is not on this map")
        return self.themes[pos]


def build_theme_map(model: TopicModel,
                    tau: float = DEFAULT_TAU,
                    clusters: int | None = None,
                    cut_height: float | None = None,
                    top_terms: int = DEFAULT_TOP_TERMS) -> ThemeMap:
    weights = all_paper_distributions(model)
    sim = theme_cooccurrence(weights, tau)
    tree = agglomerative_cluster(sim.matrix, target=clusters,
                                 cut_height=cut_height)
    layout = hex_layout(tree)
    themes = tuple(top_words(model, t, top_terms) for t in range(model.k))
    return ThemeMap(tau=tau, similarity=sim.matrix,
                    empty_themes=sim.empty_themes, tree=tree, layout=layout,
                    themes=themes, model_hash=model.content_hash)


def map_payload(tmap: ThemeMap) -> dict:
    # Theme ids come from the Theme records: excerpt maps reuse this schema
    # with a subset of the full map's ids, so ids are not always 0..K-1.
    clusters = []
    for cid in range(tmap.tree.n_clusters):
        member_ids = [tmap.themes[t].theme_id for t in range(tmap.k)
                      if tmap.layout.cluster_of[t] == cid]
        clusters.append({
            "cluster_id": cid,
            "color": tmap.layout.colors[cid],
            "centroid": list(tmap.layout.centroids[cid]),
            "themes": member_ids,
        })
    themes = []
    for t in range(tmap.k):
        q, r = tmap.layout.coords[t]
        themes.append({
            "theme_id": tmap.themes[t].theme_id,
            "label": tmap.themes[t].auto_label,
            "top_terms": [[term, weight]
                          for term, weight in tmap.themes[t].top_terms],
            "cluster": tmap.layout.cluster_of[t],
            "q": q,
            "r": r,
            "color": tmap.layout.colors[tmap.layout.cluster_of[t]],
        })
    return {
        "model_hash": tmap.model_hash,
        "tau": tmap.tau,
        "k": tmap.k,
        "n_clusters": tmap.tree.n_clusters,
        "empty_themes": list(tmap.empty_themes),
        "themes": themes,
        "clusters": clusters,
        "merges": [[m.left, m.right, m.height] for m in tmap.tree.merges],
        "kept_merges": tmap.tree.kept_merges,
        "similarity": tmap.similarity.tolist(),
    }


def save_theme_map(tmap: ThemeMap, path) -> str:
    content_hash = write_artifact(path, THEME_MAP_FORMAT, map_payload(tmap))
    tmap.content_hash = content_hash
    return content_hash


def load_theme_map(path) -> ThemeMap:
    doc = read_artifact(path, THEME_MAP_FORMAT)
    p = doc["payload"]
    k = p["k"]
    merges = tuple(Merge(left=m[0], right=m[1], height=m[2])
                   for m in p["merges"])
    cluster_of = tuple(t["cluster"] for t in p["themes"])
    tree = ClusterTree(n_leaves=k, merges=merges,
                       kept_merges=p["kept_merges"],
                       cluster_of=cluster_of, n_clusters=p["n_clusters"])
    layout = HexLayout(
        coords=tuple((t["q"], t["r"]) for t in p["themes"]),
        cluster_of=cluster_of,
        colors=tuple(c["color"] for c in p["clusters"]),
        centroids=tuple(tuple(c["centroid"]) for c in p["clusters"]),
    )
    themes = tuple(
        Theme(theme_id=t["theme_id"],
              top_terms=tuple((term, weight) for term, weight in t["top_terms"]),
              auto_label=t["label"])
        for t in p["themes"])
    return ThemeMap(tau=p["tau"],
                    similarity=np.asarray(p["similarity"], dtype=np.float64),
                    empty_themes=tuple(p["empty_themes"]),
                    tree=tree, layout=layout, themes=themes,
                    model_hash=p["model_hash"],
                    content_hash=doc["sha256"])
