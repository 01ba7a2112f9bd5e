"""Axial-coordinate hexagon grid primitives.

Coordinates are (q, r) pairs on a pointy-top hex grid.  Direction order is
fixed so every traversal (neighbors, rings, spirals) is deterministic.
"""

from __future__ import annotations

from itertools import count

Coord = tuple[int, int]

# Clockwise from east; ring walks depend on this exact order.
DIRECTIONS: tuple[Coord, ...] = (
    (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1),
)


def neighbors(cell: Coord) -> tuple[Coord, ...]:
    q, r = cell
    return tuple((q + dq, r + dr) for dq, dr in DIRECTIONS)


def distance(a: Coord, b: Coord) -> int:
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def distance_to_point(cell: Coord, point: tuple[float, float]) -> float:
    """Hex distance from a cell to a fractional axial point."""
    dq = cell[0] - point[0]
    dr = cell[1] - point[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) / 2.0


def ring(center: Coord, radius: int) -> list[Coord]:
    """The cells at exactly `radius` from center, walked in fixed order."""
    if radius == 0:
        return [center]
    q = center[0] + DIRECTIONS[4][0] * radius
    r = center[1] + DIRECTIONS[4][1] * radius
    cells = []
    for dq, dr in DIRECTIONS:
        for _ in range(radius):
            cells.append((q, r))
            q += dq
            r += dr
    return cells


def spiral(center: Coord):
    """Yield center, then ring 1, ring 2, ... indefinitely."""
    yield center
    for radius in count(1):
        yield from ring(center, radius)


def centroid(cells) -> tuple[float, float]:
    qs = [c[0] for c in cells]
    rs = [c[1] for c in cells]
    return (sum(qs) / len(qs), sum(rs) / len(rs))
