"""Independent reference implementations used to check library output.

These deliberately avoid the library's data structures and algorithms:
similarity uses python sets, clustering recomputes every linkage mean from
the original matrix at O(K^3), rankings recount topic assignments from
scratch, and hex geometry goes through cube coordinates.
"""

from __future__ import annotations

import numpy as np


def jaccard_oracle(paper_weights: np.ndarray, tau: float) -> np.ndarray:
    """Set-based Jaccard similarity over thresholded paper sets."""
    n_papers, k = paper_weights.shape
    paper_sets = [
        {p for p in range(n_papers) if paper_weights[p, t] >= tau}
        for t in range(k)
    ]
    sim = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            if i == j:
                sim[i, j] = 1.0
                continue
            union = paper_sets[i] | paper_sets[j]
            if union:
                sim[i, j] = len(paper_sets[i] & paper_sets[j]) / len(union)
    return sim


def average_linkage_oracle(s: np.ndarray,
                           target: int | None = None,
                           cut_height: float | None = None) -> dict:
    """Average-linkage clustering with every mean recomputed from s.

    Returns merge member sets in order, heights, the kept-merge count, and
    the final partition sorted by smallest member.  Merge choice: highest
    mean pairwise similarity, ties by (min leaf of the smaller-min side,
    min leaf of the other side); heights are 1 - mean, clamped
    non-decreasing.  Cut: target count if given, else height threshold,
    else the largest gap between consecutive heights (single cluster when
    fewer than 3 leaves).
    """
    s = np.asarray(s, dtype=np.float64)
    k = s.shape[0]
    members: dict[int, frozenset[int]] = {i: frozenset([i]) for i in range(k)}
    active = list(range(k))
    merges: list[tuple[frozenset[int], frozenset[int], float]] = []
    next_id = k
    prev_height = 0.0
    while len(active) > 1:
        best_key = None
        best_pair = None
        for ia in range(len(active)):
            for ib in range(ia + 1, len(active)):
                a, b = active[ia], active[ib]
                block = s[np.ix_(sorted(members[a]), sorted(members[b]))]
                avg = float(block.mean())
                lo = min(min(members[a]), min(members[b]))
                hi = max(min(members[a]), min(members[b]))
                key = (-avg, lo, hi)
                if best_key is None or key < best_key:
                    best_key = key
                    best_pair = (a, b)
        a, b = best_pair
        if min(members[b]) < min(members[a]):
            a, b = b, a
        height = max(1.0 - (-best_key[0]), prev_height)
        prev_height = height
        merges.append((members[a], members[b], height))
        members[next_id] = members[a] | members[b]
        active = [n for n in active if n not in (a, b)] + [next_id]
        next_id += 1

    heights = [h for _, _, h in merges]
    if target is not None:
        kept = k - target
    elif cut_height is not None:
        kept = sum(1 for h in heights if h <= cut_height)
    elif k < 3:
        kept = k - 1
    else:
        gaps = [heights[j + 1] - heights[j] for j in range(len(heights) - 1)]
        j_star = 0
        for j in range(1, len(gaps)):
            if gaps[j] > gaps[j_star]:
                j_star = j
        kept = j_star + 1

    parts = {frozenset([i]) for i in range(k)}
    for left, right, _ in merges[:kept]:
        parts.remove(left)
        parts.remove(right)
        parts.add(left | right)
    partition = sorted(parts, key=min)
    cluster_of = [0] * k
    for cid, group in enumerate(partition):
        for theme in group:
            cluster_of[theme] = cid
    return {
        "merges": merges,
        "heights": heights,
        "kept": kept,
        "partition": partition,
        "cluster_of": tuple(cluster_of),
    }


def tree_merge_sets(tree) -> list[tuple[frozenset[int], frozenset[int], float]]:
    """A ClusterTree's merges as (left members, right members, height)."""
    members: dict[int, frozenset[int]] = {
        i: frozenset([i]) for i in range(tree.n_leaves)}
    out = []
    for t, m in enumerate(tree.merges):
        out.append((members[m.left], members[m.right], m.height))
        members[tree.n_leaves + t] = members[m.left] | members[m.right]
    return out


def recount_chunk_topics(model, bundle) -> tuple[np.ndarray, np.ndarray]:
    """Per-chunk and per-document topic token counts rebuilt from the
    model's final assignments and the bundle's chunk boundaries."""
    n_ck = np.zeros((len(bundle.chunks), model.k), dtype=np.int64)
    pos = 0
    for ci, chunk in enumerate(bundle.chunks):
        for z in model.assignments[pos:pos + len(chunk.tokens)]:
            n_ck[ci, int(z)] += 1
        pos += len(chunk.tokens)
    assert pos == model.assignments.shape[0]
    c = model.chunk_count
    n_dk = n_ck.reshape(len(bundle.documents), c, model.k).sum(axis=1)
    return n_ck, n_dk


def paper_weights_oracle(model, bundle) -> np.ndarray:
    """Paper-level theme weights recomputed from raw counts.

    Exactly matches the library arithmetic when alpha is a dyadic float
    (0.5, 0.25, ...): numerator and denominator are then both exact, so
    both sides produce bitwise-equal quotients.
    """
    n_ck, _ = recount_chunk_topics(model, bundle)
    lengths = np.array([len(ch.tokens) for ch in bundle.chunks], dtype=np.int64)
    theta = (n_ck + model.alpha) / (lengths + model.k * model.alpha)[:, None]
    c = model.chunk_count
    return theta.reshape(len(bundle.documents), c, model.k).mean(axis=1)


def rank_oracle(model, bundle, theme_id: int, n: int) -> list[tuple[str, float]]:
    """Brute-force (doc_id, relevance%) ranking for one theme."""
    weights = paper_weights_oracle(model, bundle)
    _, n_dk = recount_chunk_topics(model, bundle)
    rows = [
        (model.doc_ids[d], float(weights[d, theme_id]) * 100.0)
        for d in range(len(model.doc_ids))
        if n_dk[d, theme_id] > 0
    ]
    rows.sort(key=lambda item: (-item[1], item[0]))
    return rows[:n]


def excerpt_themes_oracle(model, bundle, selection, theta_min: float) -> set[int]:
    """Theme ids with paper-level weight >= theta_min in any selected doc."""
    weights = paper_weights_oracle(model, bundle)
    doc_pos = {d: i for i, d in enumerate(model.doc_ids)}
    kept = set()
    for theme in range(model.k):
        for doc_id in selection:
            if weights[doc_pos[doc_id], theme] >= theta_min:
                kept.add(theme)
                break
    return kept


def cube_distance(a: tuple[int, int], b: tuple[int, int]) -> int:
    """Axial hex distance via cube coordinates (x=q, z=r, y=-x-z)."""
    ax, az = a
    bx, bz = b
    ay, by = -ax - az, -bx - bz
    return max(abs(ax - bx), abs(ay - by), abs(az - bz))


_NEIGHBOR_OFFSETS = ((1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1))


def connected_under_adjacency(cells: list[tuple[int, int]]) -> bool:
    """True when the cells form one component under hex adjacency."""
    if not cells:
        return True
    cell_set = set(cells)
    seen = {cells[0]}
    frontier = [cells[0]]
    while frontier:
        q, r = frontier.pop()
        for dq, dr in _NEIGHBOR_OFFSETS:
            nb = (q + dq, r + dr)
            if nb in cell_set and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return len(seen) == len(cell_set)


def check_layout_invariants(layout, require_separation: bool = True) -> None:
    """Assert distinct coordinates, cluster connectivity, and (when there
    are both kinds of pairs) intra-cluster mean distance < inter-cluster."""
    coords = list(layout.coords)
    assert len(set(coords)) == len(coords), "coordinates collide"

    by_cluster: dict[int, list[tuple[int, int]]] = {}
    for cell, cid in zip(coords, layout.cluster_of):
        by_cluster.setdefault(cid, []).append(cell)
    for cid, cells in by_cluster.items():
        assert connected_under_adjacency(cells), f"cluster {cid} disconnected"

    intra, inter = [], []
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            d = cube_distance(coords[i], coords[j])
            if layout.cluster_of[i] == layout.cluster_of[j]:
                intra.append(d)
            else:
                inter.append(d)
    if require_separation and intra and inter:
        mean_intra = sum(intra) / len(intra)
        mean_inter = sum(inter) / len(inter)
        assert mean_intra < mean_inter, (
            f"intra mean {mean_intra:.3f} not below inter mean {mean_inter:.3f}")


def dominant_theme_oracle(row) -> int:
    """Argmax with ties to the lowest index, via a plain scan."""
    best = 0
    for i in range(1, len(row)):
        if row[i] > row[best]:
            best = i
    return best
